#include <doctest.h>

#include <filesystem>
#include <string>

#include "fracfuse/codec.hpp"
#include "support/fixtures.hpp"

using namespace fracfuse;
using fracfuse::testing::random_image_u8;

namespace fs = std::filesystem;

TEST_CASE("PPM encoding is byte exact") {
    RgbImage img(2, 1);
    img.set(0, 0, 1.0, 0.5, 0.0);
    img.set(1, 0, 0.2, -1.0, 2.0);
    const auto bytes = encode_ppm(img);
    const std::string expect_header = "P6\n2 1\n255\n";
    REQUIRE(bytes.size() == expect_header.size() + 6);
    CHECK(std::string(bytes.begin(), bytes.begin() + expect_header.size()) == expect_header);
    const std::vector<std::uint8_t> raster(bytes.begin() + expect_header.size(), bytes.end());
    CHECK(raster == std::vector<std::uint8_t>{255, 128, 0, 51, 0, 255});
}

TEST_CASE("PPM and PNG round trip 8-bit images") {
    const RgbImage img = random_image_u8(13, 9, 4);
    CHECK(decode_ppm(encode_ppm(img)) == img);
    CHECK(decode_png(encode_png(img)) == img);
    CHECK(encode_ppm(decode_ppm(encode_ppm(img))) == encode_ppm(img));
}

TEST_CASE("PPM header tolerates comments and arbitrary whitespace") {
    const std::string text = "P6 # made by hand\n# another\n 2\t1\n255\n";
    std::vector<std::uint8_t> bytes(text.begin(), text.end());
    for (std::uint8_t v : {10, 20, 30, 40, 50, 60}) bytes.push_back(v);
    const RgbImage img = decode_ppm(bytes);
    CHECK(img.width() == 2);
    CHECK(img.height() == 1);
    CHECK(img.b()(1, 0) == 60 / 255.0);
}

TEST_CASE("malformed PPM is rejected") {
    auto bytes_of = [](const std::string& s) { return std::vector<std::uint8_t>(s.begin(), s.end()); };
    CHECK_THROWS_AS(decode_ppm(bytes_of("P3\n1 1\n255\n0 0 0\n")), IoError);
    CHECK_THROWS_AS(decode_ppm(bytes_of("P6\n2 2\n255\nabc")), IoError);
    CHECK_THROWS_AS(decode_ppm(bytes_of("P6\n2 2\n65535\n")), IoError);
    CHECK_THROWS_AS(decode_ppm(bytes_of("P6\n0 2\n255\n")), IoError);
    CHECK_THROWS_AS(decode_ppm(bytes_of("P6\nx 2\n255\n")), IoError);
    CHECK_THROWS_AS(decode_ppm(bytes_of("P6")), IoError);
}

TEST_CASE("format detection") {
    CHECK(format_from_extension("a/b.PPM") == ImageFormat::Ppm);
    CHECK(format_from_extension("x.png") == ImageFormat::Png);
    CHECK(format_from_extension("x.JPeG") == ImageFormat::Jpeg);
    CHECK(format_from_extension("x.bmp") == ImageFormat::Unknown);
    CHECK(sniff_format(encode_png(random_image_u8(2, 2, 1))) == ImageFormat::Png);
    CHECK(sniff_format({0xFF, 0xD8, 0xFF, 0xE0}) == ImageFormat::Jpeg);
    CHECK(sniff_format({'B', 'M'}) == ImageFormat::Unknown);
}

TEST_CASE("corrupt PNG and JPEG are reported as IoError") {
    auto png = encode_png(random_image_u8(8, 8, 2));
    png.resize(png.size() / 2);
    CHECK_THROWS_AS(decode_png(png), IoError);
    CHECK_THROWS_AS(decode_jpeg({0xFF, 0xD8, 0xFF, 0xE0, 0x00, 0x10, 'J', 'F'}), IoError);
}

TEST_CASE("file helpers") {
    const fs::path dir = fs::temp_directory_path() / "fracfuse_codec_test";
    fs::create_directories(dir);
    const RgbImage img = random_image_u8(6, 5, 3);
    write_image(dir / "a.ppm", img);
    write_image(dir / "a.png", img);
    CHECK(read_image(dir / "a.ppm") == img);
    CHECK(read_image(dir / "a.png") == img);
    CHECK_THROWS_AS(write_image(dir / "a.bmp", img), IoError);
    CHECK_THROWS_AS(read_image(dir / "missing.ppm"), IoError);
    write_file(dir / "junk.ppm", {'h', 'e', 'l', 'l', 'o'});
    CHECK_THROWS_AS(read_image(dir / "junk.ppm"), IoError);
    fs::remove_all(dir);
}

TEST_CASE("JPEG input decodes to RGB") {
    const fs::path data = FRACFUSE_TEST_DATA_DIR;
    const RgbImage jpg = read_image(data / "underwater_crop.jpg");
    REQUIRE(jpg.width() == 64);
    REQUIRE(jpg.height() == 48);
    auto bytes = read_file(data / "underwater_crop.jpg");
    bytes.resize(bytes.size() / 2);
    CHECK_THROWS_AS(decode_jpeg(bytes), IoError);
    const RgbImage src = read_image(data / "corpus" / "scene7_underwater.ppm");
    // Lossy, so compare channel means only.
    for (int c = 0; c < 3; ++c) {
        double a = 0, b = 0;
        for (int y = 0; y < 48; ++y)
            for (int x = 0; x < 64; ++x) {
                a += jpg.channel(c)(x, y);
                b += src.channel(c)(x, y);
            }
        CHECK(std::abs(a - b) / (64 * 48) < 4.0 / 255.0);
    }
}
