#include <doctest.h>

#include <cmath>

#include "fracfuse/fracfilter.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace fracfuse;
using fracfuse::testing::random_plane;

TEST_CASE("gl_coefficients: integer orders") {
    CHECK(gl_coefficients(1.0, 3).coeffs == std::vector<double>{1, -1, 0, 0});
    CHECK(gl_coefficients(0.0, 2).coeffs == std::vector<double>{1, 0, 0});
    CHECK(gl_coefficients(2.0, 3).coeffs == std::vector<double>{1, -2, 1, 0});
}

TEST_CASE("gl_coefficients: half order") {
    const auto gl = gl_coefficients(0.5, 3);
    const std::vector<double> frozen{1, -0.5, -0.125, -0.0625};
    REQUIRE(gl.coeffs.size() == 4);
    for (int k = 0; k <= 3; ++k) {
        CHECK(std::abs(gl.coeffs[k] - frozen[k]) <= 1e-15);
        CHECK(std::abs(gl.coeffs[k] - oracle::gl_gamma(0.5, k)) <= 1e-12);
    }
}

TEST_CASE("gl_coefficients match the gamma closed form") {
    for (double v : {0.1, 0.25, 0.5, 0.75, 0.9, 1.0, 1.5}) {
        for (int K = 1; K <= 16; ++K) {
            const auto gl = gl_coefficients(v, K);
            CHECK(gl.coeffs[0] == 1.0);
            for (int k = 0; k <= K; ++k) {
                CHECK(std::abs(gl.coeffs[k] - oracle::gl_gamma(v, k)) <= 1e-12);
                if (k >= 1) {
                    const double rec = gl.coeffs[k - 1] * (k - 1 - v) / k;
                    CHECK(std::abs(gl.coeffs[k] - rec) <= 1e-12);
                    if (v > 0 && v <= 1) CHECK(gl.coeffs[k] <= 0.0);
                }
            }
        }
    }
}

TEST_CASE("gl partial sums decrease towards zero for 0 < v < 1") {
    for (double v : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        const auto gl = gl_coefficients(v, 16);
        double prev = 1.0;
        double sum = 0.0;
        for (int k = 0; k <= 16; ++k) {
            sum += gl.coeffs[k];
            CHECK(sum <= prev);
            CHECK(sum > 0.0);
            prev = sum;
        }
    }
}

TEST_CASE("gl_coefficients validation") {
    CHECK_THROWS_AS(gl_coefficients(-0.1, 2), ConfigError);
    CHECK_THROWS_AS(gl_coefficients(2.01, 2), ConfigError);
    CHECK_THROWS_AS(gl_coefficients(std::nan(""), 2), ConfigError);
    CHECK_THROWS_AS(gl_coefficients(0.5, 0), ConfigError);
    CHECK_THROWS_AS(gl_coefficients(0.5, 17), ConfigError);
    CHECK_NOTHROW(gl_coefficients(2.0, 16));
}

TEST_CASE("build_kernel limits") {
    const auto lap = build_kernel(1.0, 1, FilterMode::HighPass);
    REQUIRE(lap.size() == 3);
    double sum = 0.0;
    for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
            const double w = lap.weight(dx, dy);
            sum += w;
            CHECK(w == ((dx == 0 && dy == 0) ? 1.0 : -0.125));
        }
    }
    CHECK(std::abs(sum) <= 1e-15);

    for (int K : {1, 2, 5}) {
        const auto id = build_kernel(0.0, K, FilterMode::HighPass);
        const auto w = id.weights();
        for (std::size_t i = 0; i < w.size(); ++i) {
            const bool centre = i == static_cast<std::size_t>(K * id.size() + K);
            CHECK(w[i] == (centre ? 1.0 : 0.0));
        }
    }

    const auto boost = build_kernel(1.0, 1, FilterMode::HighBoost, 2.0);
    CHECK(boost.weight(0, 0) == 2.0);
    CHECK(boost.weight(1, 0) == -0.125);
    CHECK(boost.weight(-1, -1) == -0.125);
}

TEST_CASE("kernel symmetry and mode relation") {
    for (double v : {0.25, 0.5, 0.75, 1.3}) {
        for (int K : {1, 2, 3, 4}) {
            for (double A : {1.0, 1.5, 2.0, 3.0}) {
                const auto hp = build_kernel(v, K, FilterMode::HighPass);
                const auto hb = build_kernel(v, K, FilterMode::HighBoost, A);
                for (int dy = -K; dy <= K; ++dy) {
                    for (int dx = -K; dx <= K; ++dx) {
                        const double w = hp.weight(dx, dy);
                        CHECK(w == hp.weight(dy, dx));    // transpose
                        CHECK(w == hp.weight(-dx, -dy));  // 180 degrees
                        CHECK(w == hp.weight(-dy, dx));   // 90 degrees
                        CHECK(w == hp.weight(-dx, dy));   // mirror
                        if (dx == 0 && dy == 0) {
                            CHECK(hb.weight(dx, dy) - w == A - 1.0);
                        } else {
                            CHECK(hb.weight(dx, dy) == w);
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("HPFC ignores the boost factor, HBFC validates it") {
    CHECK(build_kernel(0.5, 2, FilterMode::HighPass, 3.0).weights() == build_kernel(0.5, 2, FilterMode::HighPass).weights());
    CHECK_THROWS_AS(build_kernel(0.5, 2, FilterMode::HighBoost, 0.9), ConfigError);
}

TEST_CASE("convolve trivial responses") {
    const ImagePlane flat(9, 7, 0.6);
    const ImagePlane zero = convolve(flat, build_kernel(1.0, 1, FilterMode::HighPass));
    for (double v : zero.samples()) CHECK(std::abs(v) <= 1e-15);

    const ImagePlane p = random_plane(11, 6, 5);
    CHECK(convolve(p, build_kernel(0.0, 2, FilterMode::HighPass)) == p);

    ImagePlane impulse(7, 7, 0.0);
    impulse(3, 3) = 1.0;
    const auto k = build_kernel(0.5, 1, FilterMode::HighPass);
    const ImagePlane resp = convolve(impulse, k);
    for (int y = 0; y < 7; ++y) {
        for (int x = 0; x < 7; ++x) {
            const int dx = 3 - x;
            const int dy = 3 - y;
            // Correlation: the impulse shows the mask mirrored, which for a symmetric mask is the mask.
            CHECK(resp(x, y) == k.weight(dx, dy));
        }
    }
}

TEST_CASE("convolve is linear") {
    const auto k = build_kernel(0.6, 2, FilterMode::HighBoost, 1.4);
    for (std::uint32_t seed = 0; seed < 5; ++seed) {
        const ImagePlane p = random_plane(16, 16, seed);
        const ImagePlane q = random_plane(16, 16, seed + 100);
        const double a = 0.7, b = -1.3;
        ImagePlane mix(16, 16);
        for (std::size_t i = 0; i < mix.size(); ++i) mix.samples()[i] = a * p.samples()[i] + b * q.samples()[i];
        const ImagePlane lhs = convolve(mix, k);
        const ImagePlane cp = convolve(p, k);
        const ImagePlane cq = convolve(q, k);
        for (std::size_t i = 0; i < lhs.size(); ++i) {
            CHECK(std::abs(lhs.samples()[i] - (a * cp.samples()[i] + b * cq.samples()[i])) <= 1e-10);
        }
    }
}

TEST_CASE("convolve: HBFC equals HPFC plus (A-1) p exactly") {
    const ImagePlane p = random_plane(16, 12, 9);
    for (double A : {1.0, 1.25, 2.0, 3.7}) {
        const ImagePlane hp = convolve(p, build_kernel(0.75, 2, FilterMode::HighPass));
        const ImagePlane hb = convolve(p, build_kernel(0.75, 2, FilterMode::HighBoost, A));
        for (std::size_t i = 0; i < p.size(); ++i) {
            CHECK(hb.samples()[i] == hp.samples()[i] + (A - 1.0) * p.samples()[i]);
        }
    }
}

TEST_CASE("convolve handles frames smaller than the mask") {
    const auto k = build_kernel(0.5, 3, FilterMode::HighPass);
    const ImagePlane one(1, 1, 0.4);
    const ImagePlane out = convolve(one, k);
    // Replicate borders turn every tap into the single sample.
    double mask_sum = 0;
    for (double w : k.weights()) mask_sum += w;
    CHECK(out(0, 0) == doctest::Approx(0.4 * mask_sum).epsilon(1e-14));
    CHECK(all_finite(convolve(random_plane(2, 3, 1), k)));
}
