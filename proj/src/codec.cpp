#include "fracfuse/codec.hpp"

#include <algorithm>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>

#include <jpeglib.h>
#include <jerror.h>
#include <png.h>

namespace fracfuse {

namespace {

RgbImage from_interleaved(int width, int height, const std::uint8_t* data) {
    RgbImage img(width, height);
    auto r = img.r().samples();
    auto g = img.g().samples();
    auto b = img.b().samples();
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = data[3 * i] / 255.0;
        g[i] = data[3 * i + 1] / 255.0;
        b[i] = data[3 * i + 2] / 255.0;
    }
    return img;
}

std::vector<std::uint8_t> to_interleaved(const RgbImage& img) {
    const RgbImage q = quantize_u8(img);
    std::vector<std::uint8_t> out(img.pixel_count() * 3);
    auto r = q.r().samples();
    auto g = q.g().samples();
    auto b = q.b().samples();
    for (std::size_t i = 0; i < r.size(); ++i) {
        out[3 * i] = static_cast<std::uint8_t>(r[i]);
        out[3 * i + 1] = static_cast<std::uint8_t>(g[i]);
        out[3 * i + 2] = static_cast<std::uint8_t>(b[i]);
    }
    return out;
}

constexpr long kMaxDimension = 1 << 15;

// Netpbm header tokenizer: whitespace separated, '#' comments to end of line.
class PpmHeader {
public:
    explicit PpmHeader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

    long next_number() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
            throw IoError("malformed PPM header");
        }
        long v = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            v = v * 10 + (bytes_[pos_++] - '0');
            if (v > kMaxDimension * 4) throw IoError("PPM header value out of range");
        }
        return v;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    std::size_t raster_offset() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) throw IoError("malformed PPM header");
        return pos_ + 1;
    }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_ = 2;
};

}  // namespace

ImageFormat sniff_format(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '6') return ImageFormat::Ppm;
    if (bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0) return ImageFormat::Png;
    if (bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF) return ImageFormat::Jpeg;
    return ImageFormat::Unknown;
}

ImageFormat format_from_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".ppm") return ImageFormat::Ppm;
    if (ext == ".png") return ImageFormat::Png;
    if (ext == ".jpg" || ext == ".jpeg") return ImageFormat::Jpeg;
    return ImageFormat::Unknown;
}

RgbImage decode_ppm(const std::vector<std::uint8_t>& bytes) {
    if (sniff_format(bytes) != ImageFormat::Ppm) throw IoError("not a binary PPM (P6) file");
    PpmHeader header(bytes);
    const long width = header.next_number();
    const long height = header.next_number();
    const long maxval = header.next_number();
    if (width < 1 || height < 1 || width > kMaxDimension || height > kMaxDimension) {
        throw IoError("PPM dimensions out of range");
    }
    if (maxval != 255) throw IoError("only 8-bit PPM (maxval 255) is supported");
    const std::size_t offset = header.raster_offset();
    const std::size_t need = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3;
    if (bytes.size() < offset + need) throw IoError("truncated PPM raster");
    return from_interleaved(static_cast<int>(width), static_cast<int>(height), bytes.data() + offset);
}

std::vector<std::uint8_t> encode_ppm(const RgbImage& img) {
    const std::string header =
        "P6\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    const auto raster = to_interleaved(img);
    out.insert(out.end(), raster.begin(), raster.end());
    return out;
}

RgbImage decode_png(const std::vector<std::uint8_t>& bytes) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
        throw IoError(std::string("PNG decode failed: ") + image.message);
    }
    image.format = PNG_FORMAT_RGB;
    if (image.width < 1 || image.height < 1 || image.width > kMaxDimension || image.height > kMaxDimension) {
        png_image_free(&image);
        throw IoError("PNG dimensions out of range");
    }
    std::vector<std::uint8_t> raster(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, raster.data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw IoError("PNG decode failed: " + msg);
    }
    return from_interleaved(static_cast<int>(image.width), static_cast<int>(image.height), raster.data());
}

std::vector<std::uint8_t> encode_png(const RgbImage& img) {
    const auto raster = to_interleaved(img);
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width());
    image.height = static_cast<png_uint_32>(img.height());
    image.format = PNG_FORMAT_RGB;
    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&image, nullptr, &size, 0, raster.data(), 0, nullptr)) {
        throw IoError(std::string("PNG encode failed: ") + image.message);
    }
    std::vector<std::uint8_t> out(size);
    if (!png_image_write_to_memory(&image, out.data(), &size, 0, raster.data(), 0, nullptr)) {
        throw IoError(std::string("PNG encode failed: ") + image.message);
    }
    out.resize(size);
    return out;
}

namespace {

struct JpegErrorManager {
    jpeg_error_mgr base;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

// Truncated data is fatal; other warnings are dropped.
void jpeg_emit_message(j_common_ptr cinfo, int level) {
    if (level == -1 && cinfo->err->msg_code == JWRN_JPEG_EOF) jpeg_error_exit(cinfo);
}

void jpeg_output_message(j_common_ptr) {}

}  // namespace

RgbImage decode_jpeg(const std::vector<std::uint8_t>& bytes) {
    jpeg_decompress_struct cinfo{};
    JpegErrorManager err{};
    cinfo.err = jpeg_std_error(&err.base);
    err.base.error_exit = jpeg_error_exit;
    err.base.emit_message = jpeg_emit_message;
    err.base.output_message = jpeg_output_message;
    // Only trivially destructible state lives across the setjmp boundary.
    std::uint8_t* volatile raster = nullptr;
    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        std::free(raster);
        throw IoError(std::string("JPEG decode failed: ") + err.message);
    }
    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);
    const int width = static_cast<int>(cinfo.output_width);
    const int height = static_cast<int>(cinfo.output_height);
    const std::size_t stride = static_cast<std::size_t>(width) * 3;
    raster = static_cast<std::uint8_t*>(std::malloc(stride * static_cast<std::size_t>(height)));
    if (raster == nullptr) {
        jpeg_destroy_decompress(&cinfo);
        throw IoError("JPEG decode failed: out of memory");
    }
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = raster + stride * cinfo.output_scanline;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    RgbImage img = from_interleaved(width, height, raster);
    std::free(raster);
    return img;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("cannot read " + path.string());
    return bytes;
}

void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("cannot write " + path.string());
}

RgbImage read_image(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    try {
        switch (sniff_format(bytes)) {
            case ImageFormat::Ppm: return decode_ppm(bytes);
            case ImageFormat::Png: return decode_png(bytes);
            case ImageFormat::Jpeg: return decode_jpeg(bytes);
            case ImageFormat::Unknown: break;
        }
    } catch (const IoError& e) {
        throw IoError(path.string() + ": " + e.what());
    }
    throw IoError(path.string() + ": unsupported or unrecognized image format");
}

void write_image(const std::filesystem::path& path, const RgbImage& img) {
    switch (format_from_extension(path)) {
        case ImageFormat::Ppm: write_file(path, encode_ppm(img)); return;
        case ImageFormat::Png: write_file(path, encode_png(img)); return;
        default: throw IoError("unsupported output format for " + path.string() + " (use .ppm or .png)");
    }
}

}  // namespace fracfuse
