#include "fracfuse/iqa.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fracfuse {

double entropy(const ImagePlane& quantized) {
    const Histogram256 h = histogram256(quantized);
    const double total = static_cast<double>(h.total);
    double bits = 0.0;
    for (auto count : h.bins) {
        if (count == 0) continue;
        const double q = static_cast<double>(count) / total;
        bits -= q * std::log2(q);
    }
    // -0.0 for a single occupied bin
    return bits == 0.0 ? 0.0 : bits;
}

double avg_gradient(const ImagePlane& p) {
    const int w = p.width();
    const int h = p.height();
    if (w < 2 || h < 2) {
        throw InputError("avg_gradient needs an image of at least 2x2");
    }
    double sum = 0.0;
    for (int y = 0; y < h - 1; ++y) {
        for (int x = 0; x < w - 1; ++x) {
            const double gx = p(x + 1, y) - p(x, y);
            const double gy = p(x, y + 1) - p(x, y);
            sum += std::sqrt((gx * gx + gy * gy) / 2.0);
        }
    }
    return sum / (static_cast<double>(w - 1) * static_cast<double>(h - 1));
}

namespace {

struct Opponents {
    std::vector<double> rg;
    std::vector<double> yb;
};

Opponents opponents_255(const RgbImage& img) {
    Opponents o;
    o.rg.resize(img.pixel_count());
    o.yb.resize(img.pixel_count());
    auto r = img.r().samples();
    auto g = img.g().samples();
    auto b = img.b().samples();
    for (std::size_t i = 0; i < o.rg.size(); ++i) {
        const double R = 255.0 * r[i];
        const double G = 255.0 * g[i];
        const double B = 255.0 * b[i];
        o.rg[i] = R - G;
        o.yb[i] = 0.5 * (R + G) - B;
    }
    return o;
}

ImagePlane scaled_255(const ImagePlane& p) {
    ImagePlane out(p.width(), p.height());
    auto s = p.samples();
    auto d = out.samples();
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = 255.0 * s[i];
    return out;
}

}  // namespace

double colourfulness(const RgbImage& img) {
    const Opponents o = opponents_255(img);
    const Moments rg = moments(o.rg);
    const Moments yb = moments(o.yb);
    return std::sqrt(rg.stddev * rg.stddev + yb.stddev * yb.stddev) +
           0.3 * std::sqrt(rg.mean * rg.mean + yb.mean * yb.mean);
}

double cef(const RgbImage& enhanced, const RgbImage& original) {
    const double base = colourfulness(original);
    if (!(base > 0.0)) {
        throw UndefinedMetric("CEF undefined: reference image has zero colourfulness");
    }
    return colourfulness(enhanced) / base;
}

// ---------------------------------------------------------------------------
// Global Contrast Factor

namespace {

constexpr int kGcfResolutions = 9;

double gcf_weight(int i) {
    const double t = static_cast<double>(i) / 9.0;
    return (-0.406385 * t + 0.334573) * t + 0.0877526;
}

// 2x2 block mean; a trailing odd row/column averages what is available.
ImagePlane halve(const ImagePlane& p) {
    const int w = (p.width() + 1) / 2;
    const int h = (p.height() + 1) / 2;
    ImagePlane out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double sum = 0.0;
            int n = 0;
            for (int dy = 0; dy < 2; ++dy) {
                for (int dx = 0; dx < 2; ++dx) {
                    const int sx = 2 * x + dx;
                    const int sy = 2 * y + dy;
                    if (sx < p.width() && sy < p.height()) {
                        sum += p(sx, sy);
                        ++n;
                    }
                }
            }
            out(x, y) = sum / n;
        }
    }
    return out;
}

double mean_local_contrast(const ImagePlane& linear) {
    const int w = linear.width();
    const int h = linear.height();
    ImagePlane lp(w, h);
    auto src = linear.samples();
    auto dst = lp.samples();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = 100.0 * std::sqrt(src[i]);

    double total = 0.0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double c = lp(x, y);
            const double local = std::abs(c - lp.clamped(x - 1, y)) + std::abs(c - lp.clamped(x + 1, y)) +
                                 std::abs(c - lp.clamped(x, y - 1)) + std::abs(c - lp.clamped(x, y + 1));
            total += local / 4.0;
        }
    }
    return total / static_cast<double>(lp.size());
}

}  // namespace

double gcf(const RgbImage& img) {
    if (img.width() < 2 || img.height() < 2) {
        throw InputError("GCF needs an image of at least 2x2");
    }
    const ImagePlane luma = quantize_u8(luminance(img));
    ImagePlane linear(luma.width(), luma.height());
    {
        auto k = luma.samples();
        auto l = linear.samples();
        for (std::size_t i = 0; i < l.size(); ++i) l[i] = std::pow(k[i] / 255.0, 2.2);
    }
    double result = 0.0;
    for (int i = 1; i <= kGcfResolutions; ++i) {
        if (linear.width() < 2 || linear.height() < 2) break;  // remaining C_i are 0
        result += gcf_weight(i) * mean_local_contrast(linear);
        if (i < kGcfResolutions) linear = halve(linear);
    }
    return result;
}

// ---------------------------------------------------------------------------
// UIQM

namespace {

constexpr int kBlock = 8;
constexpr double kTrimAlpha = 0.1;

struct TrimmedStats {
    double mean = 0.0;
    double variance = 0.0;
};

// Alpha-trimmed mean; variance taken about that mean over all samples.
TrimmedStats trimmed_stats(std::vector<double> values) {
    const std::size_t n = values.size();
    std::sort(values.begin(), values.end());
    const auto low = static_cast<std::size_t>(std::ceil(kTrimAlpha * static_cast<double>(n)));
    const auto high = static_cast<std::size_t>(std::floor(kTrimAlpha * static_cast<double>(n)));
    TrimmedStats st;
    if (low + high < n) {
        double sum = 0.0;
        for (std::size_t i = low; i < n - high; ++i) sum += values[i];
        st.mean = sum / static_cast<double>(n - low - high);
    }
    double sq = 0.0;
    for (double v : values) sq += (v - st.mean) * (v - st.mean);
    st.variance = sq / static_cast<double>(n);
    return st;
}

double uicm(const RgbImage& img) {
    Opponents o = opponents_255(img);
    const TrimmedStats rg = trimmed_stats(std::move(o.rg));
    const TrimmedStats yb = trimmed_stats(std::move(o.yb));
    return -0.0268 * std::sqrt(rg.mean * rg.mean + yb.mean * yb.mean) +
           0.1586 * std::sqrt(rg.variance + yb.variance);
}

ImagePlane sobel_magnitude(const ImagePlane& p) {
    ImagePlane out(p.width(), p.height());
    for (int y = 0; y < p.height(); ++y) {
        for (int x = 0; x < p.width(); ++x) {
            const double tl = p.clamped(x - 1, y - 1), tc = p.clamped(x, y - 1), tr = p.clamped(x + 1, y - 1);
            const double ml = p.clamped(x - 1, y), mr = p.clamped(x + 1, y);
            const double bl = p.clamped(x - 1, y + 1), bc = p.clamped(x, y + 1), br = p.clamped(x + 1, y + 1);
            const double gx = (tr + 2.0 * mr + br) - (tl + 2.0 * ml + bl);
            const double gy = (bl + 2.0 * bc + br) - (tl + 2.0 * tc + tr);
            out(x, y) = std::sqrt(gx * gx + gy * gy);
        }
    }
    return out;
}

template <typename Term>
double block_sum(const ImagePlane& p, Term term) {
    const int bx = p.width() / kBlock;
    const int by = p.height() / kBlock;
    double sum = 0.0;
    for (int j = 0; j < by; ++j) {
        for (int i = 0; i < bx; ++i) {
            double lo = p(i * kBlock, j * kBlock);
            double hi = lo;
            for (int y = j * kBlock; y < (j + 1) * kBlock; ++y) {
                for (int x = i * kBlock; x < (i + 1) * kBlock; ++x) {
                    lo = std::min(lo, p(x, y));
                    hi = std::max(hi, p(x, y));
                }
            }
            sum += term(lo, hi);
        }
    }
    return sum;
}

double eme(const ImagePlane& p) {
    const int blocks = (p.width() / kBlock) * (p.height() / kBlock);
    const double sum = block_sum(p, [](double lo, double hi) {
        if (lo <= 0.0 || hi == lo) return 0.0;
        return std::log(hi / lo);
    });
    return 2.0 / blocks * sum;
}

double uism(const RgbImage& img) {
    constexpr double kWeights[3] = {0.299, 0.587, 0.114};
    double result = 0.0;
    for (int c = 0; c < 3; ++c) {
        const ImagePlane channel = scaled_255(img.channel(c));
        ImagePlane edge = sobel_magnitude(channel);
        auto e = edge.samples();
        auto v = channel.samples();
        for (std::size_t i = 0; i < e.size(); ++i) e[i] *= v[i];
        result += kWeights[c] * eme(edge);
    }
    return result;
}

double uiconm(const RgbImage& img) {
    const ImagePlane luma = scaled_255(luminance(img));
    const int blocks = (luma.width() / kBlock) * (luma.height() / kBlock);
    const double sum = block_sum(luma, [](double lo, double hi) {
        if (hi + lo == 0.0 || hi == lo) return 0.0;
        const double m = (hi - lo) / (hi + lo);
        return m * std::log(m);
    });
    return std::abs(sum / blocks);
}

}  // namespace

UiqmParts uiqm_parts(const RgbImage& img) {
    if (img.width() < kBlock || img.height() < kBlock) {
        throw InputError("UIQM needs an image of at least one 8x8 block");
    }
    UiqmParts parts;
    parts.uicm = uicm(img);
    parts.uism = uism(img);
    parts.uiconm = uiconm(img);
    parts.uiqm = 0.0282 * parts.uicm + 0.2953 * parts.uism + 3.5753 * parts.uiconm;
    return parts;
}

double uiqm(const RgbImage& img) { return uiqm_parts(img).uiqm; }

// ---------------------------------------------------------------------------
// UCIQE

double uciqe(const RgbImage& img) {
    constexpr double kEps = 1e-6;
    const LabPlanes lab = rgb_to_lab(img);
    const std::size_t n = img.pixel_count();
    std::vector<double> lightness(n);
    std::vector<double> chroma(n);
    double sat_sum = 0.0;
    auto L = lab.l.samples();
    auto A = lab.a.samples();
    auto B = lab.b.samples();
    for (std::size_t i = 0; i < n; ++i) {
        const double l = L[i] / 100.0;
        const double a = A[i] / 100.0;
        const double b = B[i] / 100.0;
        lightness[i] = l;
        chroma[i] = std::sqrt(a * a + b * b);
        sat_sum += std::clamp(chroma[i] / std::max(l, kEps), 0.0, 1.0);
    }
    const double sigma_chroma = moments(chroma).stddev;

    std::sort(lightness.begin(), lightness.end());
    const std::size_t tail = std::max<std::size_t>(1, n / 100);
    double bottom = 0.0;
    double top = 0.0;
    for (std::size_t i = 0; i < tail; ++i) {
        bottom += lightness[i];
        top += lightness[n - 1 - i];
    }
    const double con_l = (top - bottom) / static_cast<double>(tail);
    const double mu_sat = sat_sum / static_cast<double>(n);
    return 0.4680 * sigma_chroma + 0.2745 * con_l + 0.2576 * mu_sat;
}

MetricReport evaluate(const RgbImage& img, const RgbImage* original) {
    const RgbImage q = dequantize(quantize_u8(img));
    const ImagePlane luma = quantize_u8(luminance(q));
    MetricReport rep;
    rep.entropy = entropy(luma);
    rep.avg_gradient = avg_gradient(luma);
    rep.colourfulness = colourfulness(q);
    rep.gcf = gcf(q);
    rep.uiqm = uiqm(q);
    rep.uciqe = uciqe(q);
    if (original != nullptr) {
        const RgbImage ref = dequantize(quantize_u8(*original));
        const double base = colourfulness(ref);
        if (base > 0.0) rep.cef = rep.colourfulness / base;
    }
    return rep;
}

}  // namespace fracfuse
