#include "fracfuse/fracfilter.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <string>

namespace fracfuse {

const char* to_string(FilterMode mode) noexcept {
    return mode == FilterMode::HighPass ? "hpfc" : "hbfc";
}

GlCoefficients gl_coefficients(double order, int truncation) {
    if (!(order >= 0.0 && order <= 2.0)) {
        throw ConfigError("fractional order must lie in [0,2], got " + std::to_string(order));
    }
    if (truncation < 1 || truncation > 16) {
        throw ConfigError("truncation K must lie in [1,16], got " + std::to_string(truncation));
    }
    GlCoefficients gl{order, truncation, std::vector<double>(static_cast<std::size_t>(truncation) + 1)};
    gl.coeffs[0] = 1.0;
    for (int k = 1; k <= truncation; ++k) {
        gl.coeffs[k] = gl.coeffs[k - 1] * (static_cast<double>(k - 1) - order) / static_cast<double>(k);
    }
    return gl;
}

namespace {

constexpr std::array<std::array<int, 2>, 8> kDirections = {{
    {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1},
}};

struct Tap {
    int dx;
    int dy;
    double w;
};

}  // namespace

FractionalKernel::FractionalKernel(double order, int truncation, FilterMode mode, double boost)
    : order_(order), truncation_(truncation), mode_(mode), boost_(boost) {
    const GlCoefficients gl = gl_coefficients(order, truncation);
    if (mode == FilterMode::HighBoost && !(boost >= 1.0)) {
        throw ConfigError("high-boost factor A must be >= 1");
    }
    const int n = size();
    highpass_.assign(static_cast<std::size_t>(n) * n, 0.0);
    // Every ray contributes c_0 at the centre: 8 * c_0 / 8 = 1.
    highpass_[static_cast<std::size_t>(truncation) * n + truncation] = gl.coeffs[0];
    for (const auto& [ux, uy] : kDirections) {
        for (int k = 1; k <= truncation; ++k) {
            const int x = truncation + ux * k;
            const int y = truncation + uy * k;
            highpass_[static_cast<std::size_t>(y) * n + x] = gl.coeffs[k] / 8.0;
        }
    }
}

double FractionalKernel::weight(int dx, int dy) const noexcept {
    if (std::abs(dx) > truncation_ || std::abs(dy) > truncation_) return 0.0;
    const int n = size();
    double w = highpass_[static_cast<std::size_t>(dy + truncation_) * n + (dx + truncation_)];
    if (dx == 0 && dy == 0) w += center_shift();
    return w;
}

std::vector<double> FractionalKernel::weights() const {
    std::vector<double> w = highpass_;
    w[static_cast<std::size_t>(truncation_) * size() + truncation_] += center_shift();
    return w;
}

FractionalKernel build_kernel(double order, int truncation, FilterMode mode, double boost) {
    return FractionalKernel(order, truncation, mode, boost);
}

ImagePlane convolve(const ImagePlane& p, const FractionalKernel& k) {
    const int w = p.width();
    const int h = p.height();
    const int r = k.truncation();
    const int n = k.size();

    // Only the eight rays are populated; skip the zero entries.
    std::vector<Tap> taps;
    const auto& mask = k.highpass_weights();
    for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
            const double wt = mask[static_cast<std::size_t>(dy + r) * n + (dx + r)];
            if (wt != 0.0) taps.push_back({dx, dy, wt});
        }
    }
    const double shift = k.center_shift();

    ImagePlane out(w, h);
    for (int y = 0; y < h; ++y) {
        const bool interior_row = y >= r && y < h - r;
        auto dst = out.row(y);
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            if (interior_row && x >= r && x < w - r) {
                for (const Tap& t : taps) acc += t.w * p(x + t.dx, y + t.dy);
            } else {
                for (const Tap& t : taps) acc += t.w * p.clamped(x + t.dx, y + t.dy);
            }
            if (shift != 0.0) acc += shift * p(x, y);
            dst[x] = acc;
        }
    }
    return out;
}

}  // namespace fracfuse
