// Generates the bundled test corpus: five hazy and five underwater scenes
// rendered through the scattering model I = J t + A (1 - t).
//
//   make_corpus <output-dir>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "fracfuse/codec.hpp"
#include "fracfuse/image.hpp"

namespace {

using fracfuse::ImagePlane;
using fracfuse::RgbImage;

constexpr int kWidth = 192;
constexpr int kHeight = 144;

double unit(std::mt19937& rng) { return static_cast<double>(rng()) / 4294967296.0; }

// Sum of bilinearly interpolated random lattices, roughly in [0,1].
ImagePlane value_noise(std::mt19937& rng, int octaves, int base_cell) {
    ImagePlane out(kWidth, kHeight);
    double amplitude = 1.0;
    double norm = 0.0;
    int cell = base_cell;
    for (int o = 0; o < octaves; ++o) {
        const int gw = kWidth / cell + 2;
        const int gh = kHeight / cell + 2;
        std::vector<double> lattice(static_cast<std::size_t>(gw * gh));
        for (double& v : lattice) v = unit(rng);
        for (int y = 0; y < kHeight; ++y) {
            for (int x = 0; x < kWidth; ++x) {
                const double fx = static_cast<double>(x) / cell;
                const double fy = static_cast<double>(y) / cell;
                const int ix = static_cast<int>(fx);
                const int iy = static_cast<int>(fy);
                const double tx = fx - ix;
                const double ty = fy - iy;
                auto at = [&](int i, int j) { return lattice[static_cast<std::size_t>(j * gw + i)]; };
                const double top = at(ix, iy) * (1 - tx) + at(ix + 1, iy) * tx;
                const double bot = at(ix, iy + 1) * (1 - tx) + at(ix + 1, iy + 1) * tx;
                out(x, y) += amplitude * (top * (1 - ty) + bot * ty);
            }
        }
        norm += amplitude;
        amplitude *= 0.5;
        cell = std::max(1, cell / 2);
    }
    for (double& v : out.samples()) v /= norm;
    return out;
}

struct Scene {
    RgbImage radiance;
    ImagePlane depth;
};

Scene render_scene(std::mt19937& rng) {
    Scene s{RgbImage(kWidth, kHeight), ImagePlane(kWidth, kHeight)};
    const ImagePlane texture = value_noise(rng, 5, 32);
    const ImagePlane fine = value_noise(rng, 3, 4);
    const int horizon = kHeight / 3 + static_cast<int>(unit(rng) * kHeight / 6);
    const double ground[3] = {0.25 + 0.3 * unit(rng), 0.3 + 0.3 * unit(rng), 0.15 + 0.2 * unit(rng)};

    for (int y = 0; y < kHeight; ++y) {
        for (int x = 0; x < kWidth; ++x) {
            const double t = texture(x, y);
            const double f = fine(x, y);
            if (y < horizon) {
                const double g = static_cast<double>(y) / horizon;
                s.radiance.set(x, y, 0.55 + 0.2 * g, 0.65 + 0.15 * g, 0.85 + 0.1 * t);
                s.depth(x, y) = 1.0;
            } else {
                const double shade = 0.6 + 0.5 * t + 0.25 * (f - 0.5);
                s.radiance.set(x, y, ground[0] * shade, ground[1] * shade, ground[2] * shade);
                s.depth(x, y) = 0.95 - 0.8 * static_cast<double>(y - horizon) / (kHeight - horizon);
            }
        }
    }

    // Foreground objects: textured boxes and discs, nearer than the ground behind them.
    const int objects = 6 + static_cast<int>(unit(rng) * 5);
    for (int o = 0; o < objects; ++o) {
        const int cx = static_cast<int>(unit(rng) * kWidth);
        const int cy = horizon / 2 + static_cast<int>(unit(rng) * (kHeight - horizon / 2));
        const int rad = 6 + static_cast<int>(unit(rng) * 22);
        const bool disc = unit(rng) < 0.5;
        const double colour[3] = {0.1 + 0.85 * unit(rng), 0.1 + 0.85 * unit(rng), 0.1 + 0.85 * unit(rng)};
        const double depth = 0.15 + 0.6 * unit(rng);
        const int stripe = 2 + static_cast<int>(unit(rng) * 6);
        for (int y = std::max(0, cy - rad); y < std::min(kHeight, cy + rad); ++y) {
            for (int x = std::max(0, cx - rad); x < std::min(kWidth, cx + rad); ++x) {
                const int dx = x - cx;
                const int dy = y - cy;
                if (disc && dx * dx + dy * dy > rad * rad) continue;
                const double pattern = ((x / stripe + y / stripe) % 2 == 0) ? 1.0 : 0.7;
                const double shade = pattern * (0.8 + 0.4 * (fine(x, y) - 0.5));
                s.radiance.set(x, y, colour[0] * shade, colour[1] * shade, colour[2] * shade);
                s.depth(x, y) = std::min(s.depth(x, y), depth);
            }
        }
    }
    return s;
}

RgbImage degrade(const Scene& s, const double beta[3], const double airlight[3]) {
    RgbImage out(kWidth, kHeight);
    for (int c = 0; c < 3; ++c) {
        auto j = s.radiance.channel(c).samples();
        auto d = s.depth.samples();
        auto o = out.channel(c).samples();
        for (std::size_t i = 0; i < o.size(); ++i) {
            const double t = std::exp(-beta[c] * d[i]);
            o[i] = std::clamp(std::clamp(j[i], 0.0, 1.0) * t + airlight[c] * (1.0 - t), 0.0, 1.0);
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_corpus <output-dir>\n";
        return 64;
    }
    const std::filesystem::path dir = argv[1];
    std::filesystem::create_directories(dir);
    std::mt19937 rng(20240611u);
    for (int i = 0; i < 10; ++i) {
        const Scene scene = render_scene(rng);
        const bool underwater = i >= 5;
        RgbImage img;
        std::string name;
        if (underwater) {
            const double beta[3] = {2.2 + unit(rng), 0.7 + 0.4 * unit(rng), 0.5 + 0.4 * unit(rng)};
            const double air[3] = {0.05 + 0.1 * unit(rng), 0.4 + 0.2 * unit(rng), 0.5 + 0.2 * unit(rng)};
            img = degrade(scene, beta, air);
            name = "underwater";
        } else {
            const double b = 1.0 + 1.2 * unit(rng);
            const double beta[3] = {b, b, b};
            const double a = 0.8 + 0.12 * unit(rng);
            const double air[3] = {a, a + 0.02, a + 0.04};
            img = degrade(scene, beta, air);
            name = "hazy";
        }
        const auto path = dir / ("scene" + std::to_string(i) + "_" + name + ".ppm");
        fracfuse::write_image(path, img);
        std::cout << path.string() << "\n";
    }
    return 0;
}
