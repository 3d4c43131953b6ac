#pragma once

// Reference transcriptions used only by the tests. They work on plain
// nested vectors of 8-bit values and share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "fracfuse/image.hpp"

namespace fracfuse::oracle {

using Grid = std::vector<std::vector<double>>;  // [row][col]

struct Rgb8 {
    int w = 0;
    int h = 0;
    Grid r, g, b;  // 0..255
};

inline Rgb8 to_rgb8(const RgbImage& img) {
    Rgb8 o;
    o.w = img.width();
    o.h = img.height();
    auto grab = [&](const ImagePlane& p) {
        Grid g(o.h, std::vector<double>(o.w));
        for (int y = 0; y < o.h; ++y)
            for (int x = 0; x < o.w; ++x) g[y][x] = std::round(std::clamp(p(x, y), 0.0, 1.0) * 255.0);
        return g;
    };
    o.r = grab(img.r());
    o.g = grab(img.g());
    o.b = grab(img.b());
    return o;
}

// (-1)^k binom(v, k) through the gamma function; falling-factorial product
// for integer orders.
inline double gl_gamma(double v, int k) {
    if (v == std::floor(v)) {
        double num = 1.0;
        for (int j = 0; j < k; ++j) num *= (v - j);
        double fact = 1.0;
        for (int j = 2; j <= k; ++j) fact *= j;
        return ((k % 2) ? -1.0 : 1.0) * num / fact;
    }
    return std::tgamma(k - v) / (std::tgamma(-v) * std::tgamma(k + 1.0));
}

// L* of an sRGB gray level in [0,1].
inline double gray_lightness(double g) {
    const double lin = g <= 0.04045 ? g / 12.92 : std::pow((g + 0.055) / 1.055, 2.4);
    return lin > 216.0 / 24389.0 ? 116.0 * std::cbrt(lin) - 16.0 : lin * 24389.0 / 27.0;
}

inline double mean_of(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / v.size();
}

inline double pop_std(const std::vector<double>& v) {
    const double m = mean_of(v);
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / v.size());
}

inline Grid luma8(const Rgb8& im) {
    Grid l(im.h, std::vector<double>(im.w));
    for (int y = 0; y < im.h; ++y)
        for (int x = 0; x < im.w; ++x)
            l[y][x] = std::round(0.299 * im.r[y][x] + 0.587 * im.g[y][x] + 0.114 * im.b[y][x]);
    return l;
}

inline double colourfulness(const Rgb8& im) {
    std::vector<double> rg, yb;
    for (int y = 0; y < im.h; ++y) {
        for (int x = 0; x < im.w; ++x) {
            rg.push_back(im.r[y][x] - im.g[y][x]);
            yb.push_back((im.r[y][x] + im.g[y][x]) / 2.0 - im.b[y][x]);
        }
    }
    const double sr = pop_std(rg), sy = pop_std(yb), mr = mean_of(rg), my = mean_of(yb);
    return std::sqrt(sr * sr + sy * sy) + 0.3 * std::sqrt(mr * mr + my * my);
}

inline double avg_gradient(const Grid& p) {
    const int h = static_cast<int>(p.size());
    const int w = static_cast<int>(p[0].size());
    double s = 0;
    for (int i = 0; i + 1 < h; ++i)
        for (int j = 0; j + 1 < w; ++j) {
            const double gx = p[i][j + 1] - p[i][j];
            const double gy = p[i + 1][j] - p[i][j];
            s += std::sqrt((gx * gx + gy * gy) / 2);
        }
    return s / ((w - 1) * (h - 1));
}

// Global Contrast Factor.
inline double gcf(const Rgb8& im) {
    const Grid k = luma8(im);
    Grid lin(im.h, std::vector<double>(im.w));
    for (int y = 0; y < im.h; ++y)
        for (int x = 0; x < im.w; ++x) lin[y][x] = std::pow(k[y][x] / 255.0, 2.2);

    double total = 0;
    for (int i = 1; i <= 9; ++i) {
        const int h = static_cast<int>(lin.size());
        const int w = h ? static_cast<int>(lin[0].size()) : 0;
        double ci = 0;
        if (w >= 2 && h >= 2) {
            double sum = 0;
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    const double c = 100 * std::sqrt(lin[y][x]);
                    double d = 0;
                    if (x > 0) d += std::fabs(c - 100 * std::sqrt(lin[y][x - 1]));
                    if (x < w - 1) d += std::fabs(c - 100 * std::sqrt(lin[y][x + 1]));
                    if (y > 0) d += std::fabs(c - 100 * std::sqrt(lin[y - 1][x]));
                    if (y < h - 1) d += std::fabs(c - 100 * std::sqrt(lin[y + 1][x]));
                    sum += d / 4;
                }
            }
            ci = sum / (w * h);
        }
        const double t = i / 9.0;
        total += ((-0.406385 * t + 0.334573) * t + 0.0877526) * ci;
        if (w < 2 || h < 2) continue;
        Grid next((h + 1) / 2, std::vector<double>((w + 1) / 2));
        for (int y = 0; y < (h + 1) / 2; ++y) {
            for (int x = 0; x < (w + 1) / 2; ++x) {
                double s = 0;
                int n = 0;
                for (int yy = 2 * y; yy < std::min(h, 2 * y + 2); ++yy)
                    for (int xx = 2 * x; xx < std::min(w, 2 * x + 2); ++xx) {
                        s += lin[yy][xx];
                        ++n;
                    }
                next[y][x] = s / n;
            }
        }
        lin = next;
    }
    return total;
}

// UIQM.
inline double uiqm(const Rgb8& im) {
    std::vector<double> rg, yb;
    for (int y = 0; y < im.h; ++y)
        for (int x = 0; x < im.w; ++x) {
            rg.push_back(im.r[y][x] - im.g[y][x]);
            yb.push_back((im.r[y][x] + im.g[y][x]) / 2.0 - im.b[y][x]);
        }
    auto trimmed = [](std::vector<double> v, double& mu, double& var) {
        const int n = static_cast<int>(v.size());
        std::sort(v.begin(), v.end());
        const int tl = static_cast<int>(std::ceil(0.1 * n));
        const int tr = static_cast<int>(std::floor(0.1 * n));
        mu = 0;
        for (int i = tl; i < n - tr; ++i) mu += v[i];
        mu /= (n - tl - tr);
        var = 0;
        for (double x : v) var += (x - mu) * (x - mu);
        var /= n;
    };
    double mrg, vrg, myb, vyb;
    trimmed(rg, mrg, vrg);
    trimmed(yb, myb, vyb);
    const double uicm = -0.0268 * std::sqrt(mrg * mrg + myb * myb) + 0.1586 * std::sqrt(vrg + vyb);

    const int k1 = im.w / 8, k2 = im.h / 8;
    auto at = [&](const Grid& g, int y, int x) {
        y = std::max(0, std::min(im.h - 1, y));
        x = std::max(0, std::min(im.w - 1, x));
        return g[y][x];
    };
    auto eme = [&](const Grid& g) {
        double s = 0;
        for (int by = 0; by < k2; ++by)
            for (int bx = 0; bx < k1; ++bx) {
                double mx = -1e300, mn = 1e300;
                for (int y = by * 8; y < by * 8 + 8; ++y)
                    for (int x = bx * 8; x < bx * 8 + 8; ++x) {
                        mx = std::max(mx, g[y][x]);
                        mn = std::min(mn, g[y][x]);
                    }
                if (mn > 0 && mx != mn) s += std::log(mx / mn);
            }
        return 2.0 / (k1 * k2) * s;
    };
    const int sx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
    const int sy[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};
    const Grid* chans[3] = {&im.r, &im.g, &im.b};
    const double lam[3] = {0.299, 0.587, 0.114};
    double uism = 0;
    for (int c = 0; c < 3; ++c) {
        const Grid& ch = *chans[c];
        Grid edge(im.h, std::vector<double>(im.w));
        for (int y = 0; y < im.h; ++y)
            for (int x = 0; x < im.w; ++x) {
                double gx = 0, gy = 0;
                for (int j = -1; j <= 1; ++j)
                    for (int i = -1; i <= 1; ++i) {
                        gx += sx[j + 1][i + 1] * at(ch, y + j, x + i);
                        gy += sy[j + 1][i + 1] * at(ch, y + j, x + i);
                    }
                edge[y][x] = std::sqrt(gx * gx + gy * gy) * ch[y][x];
            }
        uism += lam[c] * eme(edge);
    }

    double s = 0;
    for (int by = 0; by < k2; ++by)
        for (int bx = 0; bx < k1; ++bx) {
            double mx = -1e300, mn = 1e300;
            for (int y = by * 8; y < by * 8 + 8; ++y)
                for (int x = bx * 8; x < bx * 8 + 8; ++x) {
                    const double l = 0.299 * im.r[y][x] + 0.587 * im.g[y][x] + 0.114 * im.b[y][x];
                    mx = std::max(mx, l);
                    mn = std::min(mn, l);
                }
            if (mx + mn != 0 && mx != mn) {
                const double m = (mx - mn) / (mx + mn);
                s += m * std::log(m);
            }
        }
    const double uiconm = std::fabs(s / (k1 * k2));
    return 0.0282 * uicm + 0.2953 * uism + 3.5753 * uiconm;
}

// UCIQE, with the textbook D65 white (0.95047, 1, 1.08883).
inline double uciqe(const Rgb8& im) {
    auto lin = [](double v) {
        v /= 255.0;
        return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
    };
    auto f = [](double t) { return t > 216.0 / 24389.0 ? std::cbrt(t) : (24389.0 / 27.0 * t + 16) / 116; };
    std::vector<double> L, chroma;
    double sat = 0;
    for (int y = 0; y < im.h; ++y)
        for (int x = 0; x < im.w; ++x) {
            const double r = lin(im.r[y][x]), g = lin(im.g[y][x]), b = lin(im.b[y][x]);
            const double X = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
            const double Y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
            const double Z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
            const double fx = f(X / 0.95047), fy = f(Y / 1.0), fz = f(Z / 1.08883);
            const double l = (116 * fy - 16) / 100, a = 500 * (fx - fy) / 100, bb = 200 * (fy - fz) / 100;
            const double c = std::sqrt(a * a + bb * bb);
            L.push_back(l);
            chroma.push_back(c);
            sat += std::min(1.0, std::max(0.0, c / std::max(l, 1e-6)));
        }
    const int n = static_cast<int>(L.size());
    std::sort(L.begin(), L.end());
    const int t = std::max(1, n / 100);
    double lo = 0, hi = 0;
    for (int i = 0; i < t; ++i) {
        lo += L[i];
        hi += L[n - 1 - i];
    }
    return 0.4680 * pop_std(chroma) + 0.2745 * (hi - lo) / t + 0.2576 * sat / n;
}

}  // namespace fracfuse::oracle
