#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracfuse/image.hpp"

namespace fracfuse {

/// File could not be opened, read, decoded or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ImageFormat { Ppm, Png, Jpeg, Unknown };

/// Chosen from the leading magic bytes.
ImageFormat sniff_format(const std::vector<std::uint8_t>& bytes);

/// Chosen from the extension (case-insensitive).
ImageFormat format_from_extension(const std::filesystem::path& path);

// In-memory codecs. Samples are 8-bit values mapped to [0,1].
RgbImage decode_ppm(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> encode_ppm(const RgbImage& img);
RgbImage decode_png(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> encode_png(const RgbImage& img);
RgbImage decode_jpeg(const std::vector<std::uint8_t>& bytes);

/// Reads PPM (P6), PNG or JPEG, dispatching on content.
RgbImage read_image(const std::filesystem::path& path);

/// Writes PPM or PNG depending on the extension; anything else is an IoError.
void write_image(const std::filesystem::path& path, const RgbImage& img);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

}  // namespace fracfuse
