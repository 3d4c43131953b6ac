#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracfuse {

/// Raised when a function is called outside its documented domain
/// (e.g. a histogram of a plane that was never quantized).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Single-channel 2-D field of real samples stored row-major.
///
/// Samples are nominally in [0,1]; intermediates (detail planes, unclamped
/// reconstructions) may leave that range. Quantized planes hold integer
/// values in [0,255].
class ImagePlane {
public:
    ImagePlane() = default;
    ImagePlane(int width, int height, double fill = 0.0);
    ImagePlane(int width, int height, std::vector<double> samples);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return samples_.size(); }
    bool empty() const noexcept { return samples_.empty(); }

    double& operator()(int x, int y) noexcept { return samples_[index(x, y)]; }
    double operator()(int x, int y) const noexcept { return samples_[index(x, y)]; }

    /// Replicate-border access: coordinates are clamped into the frame.
    double clamped(int x, int y) const noexcept;

    std::span<double> samples() noexcept { return samples_; }
    std::span<const double> samples() const noexcept { return samples_; }
    std::span<double> row(int y) noexcept { return {samples_.data() + index(0, y), static_cast<std::size_t>(width_)}; }
    std::span<const double> row(int y) const noexcept {
        return {samples_.data() + index(0, y), static_cast<std::size_t>(width_)};
    }

    bool same_shape(const ImagePlane& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const ImagePlane&, const ImagePlane&) = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<double> samples_;
};

/// Three aligned planes sharing one shape.
class RgbImage {
public:
    RgbImage() = default;
    RgbImage(int width, int height);
    RgbImage(ImagePlane r, ImagePlane g, ImagePlane b);

    int width() const noexcept { return r_.width(); }
    int height() const noexcept { return r_.height(); }
    std::size_t pixel_count() const noexcept { return r_.size(); }

    ImagePlane& r() noexcept { return r_; }
    ImagePlane& g() noexcept { return g_; }
    ImagePlane& b() noexcept { return b_; }
    const ImagePlane& r() const noexcept { return r_; }
    const ImagePlane& g() const noexcept { return g_; }
    const ImagePlane& b() const noexcept { return b_; }

    ImagePlane& channel(int c) noexcept { return c == 0 ? r_ : (c == 1 ? g_ : b_); }
    const ImagePlane& channel(int c) const noexcept { return c == 0 ? r_ : (c == 1 ? g_ : b_); }

    void set(int x, int y, double red, double green, double blue) noexcept {
        r_(x, y) = red;
        g_(x, y) = green;
        b_(x, y) = blue;
    }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;

private:
    ImagePlane r_;
    ImagePlane g_;
    ImagePlane b_;
};

struct Histogram256 {
    std::array<std::uint64_t, 256> bins{};
    std::uint64_t total = 0;
};

struct Moments {
    double mean = 0.0;
    double stddev = 0.0;
};

struct LabPlanes {
    ImagePlane l;
    ImagePlane a;
    ImagePlane b;
};

/// Rec.601 luma: 0.299 R + 0.587 G + 0.114 B.
ImagePlane luminance(const RgbImage& img);

/// Clamp to [0,1], scale by 255 and round half away from zero.
/// The result holds integer-valued samples in [0,255].
ImagePlane quantize_u8(const ImagePlane& p);
RgbImage quantize_u8(const RgbImage& img);

/// Inverse scaling of a quantized plane back to [0,1].
ImagePlane dequantize(const ImagePlane& q);
RgbImage dequantize(const RgbImage& q);

/// Requires integer samples in [0,255]; throws InputError otherwise.
Histogram256 histogram256(const ImagePlane& p);

/// Mean and population standard deviation. Throws InputError on an empty plane.
Moments moments(const ImagePlane& p);
Moments moments(std::span<const double> values);

/// sRGB (D65) to CIELab. L in [0,100].
LabPlanes rgb_to_lab(const RgbImage& img);

/// True if every sample is finite.
bool all_finite(const ImagePlane& p) noexcept;
bool all_finite(const RgbImage& img) noexcept;

/// Clamp every sample into [lo, hi].
ImagePlane clamp(const ImagePlane& p, double lo = 0.0, double hi = 1.0);
RgbImage clamp(const RgbImage& img, double lo = 0.0, double hi = 1.0);

}  // namespace fracfuse
