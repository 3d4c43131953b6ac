#include "fracfuse/image.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace fracfuse {

ImagePlane::ImagePlane(int width, int height, double fill) : width_(width), height_(height) {
    if (width < 1 || height < 1) {
        throw InputError("image plane dimensions must be at least 1x1");
    }
    samples_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

ImagePlane::ImagePlane(int width, int height, std::vector<double> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
    if (width < 1 || height < 1) {
        throw InputError("image plane dimensions must be at least 1x1");
    }
    if (samples_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw InputError("sample count does not match width x height");
    }
}

double ImagePlane::clamped(int x, int y) const noexcept {
    x = std::clamp(x, 0, width_ - 1);
    y = std::clamp(y, 0, height_ - 1);
    return samples_[index(x, y)];
}

RgbImage::RgbImage(int width, int height) : r_(width, height), g_(width, height), b_(width, height) {}

RgbImage::RgbImage(ImagePlane r, ImagePlane g, ImagePlane b)
    : r_(std::move(r)), g_(std::move(g)), b_(std::move(b)) {
    if (!r_.same_shape(g_) || !r_.same_shape(b_)) {
        throw InputError("RGB planes must share dimensions");
    }
}

ImagePlane luminance(const RgbImage& img) {
    ImagePlane out(img.width(), img.height());
    auto r = img.r().samples();
    auto g = img.g().samples();
    auto b = img.b().samples();
    auto y = out.samples();
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = 0.299 * r[i] + 0.587 * g[i] + 0.114 * b[i];
    }
    return out;
}

namespace {

double quantize_sample(double v) {
    // NaN falls through to 0 rather than poisoning integer output.
    if (!(v > 0.0)) return 0.0;
    if (v >= 1.0) return 255.0;
    return std::round(v * 255.0);  // std::round is half away from zero
}

}  // namespace

ImagePlane quantize_u8(const ImagePlane& p) {
    ImagePlane out(p.width(), p.height());
    auto src = p.samples();
    auto dst = out.samples();
    std::transform(src.begin(), src.end(), dst.begin(), quantize_sample);
    return out;
}

RgbImage quantize_u8(const RgbImage& img) {
    return {quantize_u8(img.r()), quantize_u8(img.g()), quantize_u8(img.b())};
}

ImagePlane dequantize(const ImagePlane& q) {
    ImagePlane out(q.width(), q.height());
    auto src = q.samples();
    auto dst = out.samples();
    std::transform(src.begin(), src.end(), dst.begin(), [](double v) { return v / 255.0; });
    return out;
}

RgbImage dequantize(const RgbImage& q) {
    return {dequantize(q.r()), dequantize(q.g()), dequantize(q.b())};
}

Histogram256 histogram256(const ImagePlane& p) {
    Histogram256 h;
    for (double v : p.samples()) {
        if (!(v >= 0.0 && v <= 255.0) || v != std::floor(v)) {
            throw InputError("histogram256 expects a quantized plane (integers in [0,255])");
        }
        ++h.bins[static_cast<std::size_t>(v)];
    }
    h.total = p.size();
    return h;
}

Moments moments(std::span<const double> values) {
    if (values.empty()) {
        throw InputError("moments of an empty sample set");
    }
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    double sq = 0.0;
    for (double v : values) {
        const double d = v - mean;
        sq += d * d;
    }
    return {mean, std::sqrt(sq / n)};
}

Moments moments(const ImagePlane& p) { return moments(p.samples()); }

namespace {

double srgb_to_linear(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double lab_f(double t) {
    constexpr double delta = 6.0 / 29.0;
    if (t > delta * delta * delta) return std::cbrt(t);
    return t / (3.0 * delta * delta) + 4.0 / 29.0;
}

// sRGB primaries, D65 white.
constexpr double kM[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
};

// White point = matrix row sums.
constexpr double kXn = kM[0][0] + kM[0][1] + kM[0][2];
constexpr double kYn = kM[1][0] + kM[1][1] + kM[1][2];
constexpr double kZn = kM[2][0] + kM[2][1] + kM[2][2];

}  // namespace

LabPlanes rgb_to_lab(const RgbImage& img) {
    LabPlanes lab{ImagePlane(img.width(), img.height()), ImagePlane(img.width(), img.height()),
                  ImagePlane(img.width(), img.height())};
    auto r = img.r().samples();
    auto g = img.g().samples();
    auto b = img.b().samples();
    auto L = lab.l.samples();
    auto A = lab.a.samples();
    auto B = lab.b.samples();
    for (std::size_t i = 0; i < L.size(); ++i) {
        const double rl = srgb_to_linear(r[i]);
        const double gl = srgb_to_linear(g[i]);
        const double bl = srgb_to_linear(b[i]);
        const double fx = lab_f((kM[0][0] * rl + kM[0][1] * gl + kM[0][2] * bl) / kXn);
        const double fy = lab_f((kM[1][0] * rl + kM[1][1] * gl + kM[1][2] * bl) / kYn);
        const double fz = lab_f((kM[2][0] * rl + kM[2][1] * gl + kM[2][2] * bl) / kZn);
        L[i] = 116.0 * fy - 16.0;
        A[i] = 500.0 * (fx - fy);
        B[i] = 200.0 * (fy - fz);
    }
    return lab;
}

bool all_finite(const ImagePlane& p) noexcept {
    return std::all_of(p.samples().begin(), p.samples().end(), [](double v) { return std::isfinite(v); });
}

bool all_finite(const RgbImage& img) noexcept {
    return all_finite(img.r()) && all_finite(img.g()) && all_finite(img.b());
}

ImagePlane clamp(const ImagePlane& p, double lo, double hi) {
    ImagePlane out(p.width(), p.height());
    auto src = p.samples();
    auto dst = out.samples();
    std::transform(src.begin(), src.end(), dst.begin(), [lo, hi](double v) { return std::clamp(v, lo, hi); });
    return out;
}

RgbImage clamp(const RgbImage& img, double lo, double hi) {
    return {clamp(img.r(), lo, hi), clamp(img.g(), lo, hi), clamp(img.b(), lo, hi)};
}

}  // namespace fracfuse
