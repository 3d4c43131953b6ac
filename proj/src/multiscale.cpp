#include "fracfuse/multiscale.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fracfuse {

std::vector<double> gaussian_taps(double sigma) {
    if (!(sigma > 0.0)) {
        throw ConfigError("gaussian sigma must be positive");
    }
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
    const double denom = 2.0 * sigma * sigma;
    for (int i = 0; i <= radius; ++i) {
        const double w = std::exp(-static_cast<double>(i * i) / denom);
        taps[radius + i] = w;
        taps[radius - i] = w;
    }
    // Sum symmetrically from the tails so the result does not depend on direction.
    double sum = taps[radius];
    for (int i = radius; i >= 1; --i) sum += 2.0 * taps[radius + i];
    for (double& w : taps) w /= sum;
    return taps;
}

namespace {

// One 1-D pass over rows (horizontal) with replicate borders.
void blur_rows(const ImagePlane& src, ImagePlane& dst, const std::vector<double>& taps) {
    const int w = src.width();
    const int h = src.height();
    const int r = static_cast<int>(taps.size() / 2);
    for (int y = 0; y < h; ++y) {
        auto in = src.row(y);
        auto out = dst.row(y);
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            if (x >= r && x < w - r) {
                const double* base = in.data() + (x - r);
                for (std::size_t t = 0; t < taps.size(); ++t) acc += taps[t] * base[t];
            } else {
                for (int t = -r; t <= r; ++t) acc += taps[t + r] * in[std::clamp(x + t, 0, w - 1)];
            }
            out[x] = acc;
        }
    }
}

// Vertical pass, accumulated row-wise so the inner loop walks contiguous memory.
void blur_cols(const ImagePlane& src, ImagePlane& dst, const std::vector<double>& taps) {
    const int w = src.width();
    const int h = src.height();
    const int r = static_cast<int>(taps.size() / 2);
    for (int y = 0; y < h; ++y) {
        auto out = dst.row(y);
        std::fill(out.begin(), out.end(), 0.0);
        for (int t = -r; t <= r; ++t) {
            const double wt = taps[t + r];
            auto in = src.row(std::clamp(y + t, 0, h - 1));
            for (int x = 0; x < w; ++x) out[x] += wt * in[x];
        }
    }
}

}  // namespace

ImagePlane gaussian_blur(const ImagePlane& p, double sigma) {
    const auto taps = gaussian_taps(sigma);
    ImagePlane tmp(p.width(), p.height());
    ImagePlane out(p.width(), p.height());
    blur_rows(p, tmp, taps);
    blur_cols(tmp, out, taps);
    return out;
}

ScaleStack decompose(const ImagePlane& p, int levels, double sigma0) {
    if (levels < 1) {
        throw ConfigError("decomposition needs at least one level, got " + std::to_string(levels));
    }
    if (!(sigma0 > 0.0) || !std::isfinite(sigma0)) {
        throw ConfigError("sigma0 must be positive and finite");
    }
    ScaleStack stack;
    stack.details.reserve(static_cast<std::size_t>(levels));
    ImagePlane current = p;
    for (int l = 1; l <= levels; ++l) {
        const double sigma = sigma0 * std::ldexp(1.0, l - 1);
        ImagePlane smooth = gaussian_blur(current, sigma);
        ImagePlane detail(p.width(), p.height());
        auto c = current.samples();
        auto s = smooth.samples();
        auto d = detail.samples();
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = c[i] - s[i];
        stack.details.push_back(std::move(detail));
        stack.sigmas.push_back(sigma);
        current = std::move(smooth);
    }
    stack.approx = std::move(current);
    return stack;
}

ScaleStack enhance_stack(const ScaleStack& s, const FractionalKernel& k, double lambda) {
    if (!(lambda >= 0.0)) {
        throw ConfigError("detail gain lambda must be >= 0");
    }
    ScaleStack out = s;
    if (lambda == 0.0) return out;
    for (auto& detail : out.details) {
        const ImagePlane response = convolve(detail, k);
        auto d = detail.samples();
        auto r = response.samples();
        for (std::size_t i = 0; i < d.size(); ++i) d[i] += lambda * r[i];
    }
    return out;
}

ImagePlane reconstruct(const ScaleStack& s, double approx_gain) {
    if (!(approx_gain > 0.0 && approx_gain <= 1.5)) {
        throw ConfigError("approximation gain must lie in (0,1.5]");
    }
    ImagePlane out(s.approx.width(), s.approx.height());
    auto o = out.samples();
    auto a = s.approx.samples();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = approx_gain * a[i];
    // coarsest first
    for (auto it = s.details.rbegin(); it != s.details.rend(); ++it) {
        auto d = it->samples();
        for (std::size_t i = 0; i < o.size(); ++i) o[i] += d[i];
    }
    return out;
}

}  // namespace fracfuse
