#pragma once

#include <cstdint>
#include <random>
#include <algorithm>
#include <cmath>

#include "fracfuse/image.hpp"

namespace fracfuse::testing {

inline ImagePlane random_plane(int w, int h, std::uint32_t seed, double lo = 0.0, double hi = 1.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    ImagePlane p(w, h);
    for (double& v : p.samples()) v = dist(rng);
    return p;
}

/// Random image with 8-bit sample values (k/255), like anything read from disk.
inline RgbImage random_image_u8(int w, int h, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(0, 255);
    RgbImage img(w, h);
    for (int c = 0; c < 3; ++c) {
        for (double& v : img.channel(c).samples()) v = dist(rng) / 255.0;
    }
    return img;
}

/// Smooth colour gradients plus texture, closer to natural content than noise.
inline RgbImage synthetic_scene(int w, int h, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> noise(-0.08, 0.08);
    RgbImage img(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double u = static_cast<double>(x) / w;
            const double v = static_cast<double>(y) / h;
            const double tex = ((x / 4 + y / 4) % 2 == 0) ? 0.1 : -0.1;
            auto q = [](double s) { return std::round(std::clamp(s, 0.0, 1.0) * 255.0) / 255.0; };
            img.set(x, y, q(0.2 + 0.5 * u + tex + noise(rng)), q(0.3 + 0.4 * v + noise(rng)),
                    q(0.6 - 0.3 * u * v + 0.5 * tex + noise(rng)));
        }
    }
    return img;
}

inline RgbImage constant_image(int w, int h, double r, double g, double b) {
    return {ImagePlane(w, h, r), ImagePlane(w, h, g), ImagePlane(w, h, b)};
}

}  // namespace fracfuse::testing
