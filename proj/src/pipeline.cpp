#include "fracfuse/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include "fracfuse/multiscale.hpp"

namespace fracfuse {

namespace {

// Static partition of [0, n) across workers. Every index writes only its own
// slot, so results are independent of the thread count.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn fn) {
    const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < n; i += workers) fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

std::string short_number(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
    return std::string(buf, res.ptr);
}

}  // namespace

void PipelineConfig::validate() const {
    if (orders.empty()) throw ConfigError("at least one fractional order is required");
    for (double v : orders) {
        if (!(v >= 0.0 && v <= 2.0)) throw ConfigError("fractional order " + short_number(v) + " outside [0,2]");
    }
    if (truncation < 1 || truncation > 16) throw ConfigError("K must lie in [1,16]");
    if (!(boost >= 1.0) || !std::isfinite(boost)) throw ConfigError("boost A must be finite and >= 1");
    if (levels < 1 || levels > 12) throw ConfigError("levels must lie in [1,12]");
    if (!(sigma0 > 0.0) || !std::isfinite(sigma0)) throw ConfigError("sigma0 must be positive");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ConfigError("lambda must be finite and >= 0");
    const double ga = effective_approx_gain();
    if (!(ga > 0.0 && ga <= 1.5)) throw ConfigError("approximation gain must lie in (0,1.5]");
    if (threads < 1) throw ConfigError("threads must be >= 1");
}

std::string PipelineConfig::summary() const {
    std::string s = to_string(mode);
    s += "/v=";
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (i) s += ':';
        s += short_number(orders[i]);
    }
    s += "/K=" + std::to_string(truncation);
    s += "/A=" + short_number(boost);
    s += "/L=" + std::to_string(levels);
    s += "/s0=" + short_number(sigma0);
    s += "/lam=" + short_number(lambda);
    s += "/ga=" + short_number(effective_approx_gain());
    s += '/';
    s += to_string(strategy);
    if (stretch) s += "/stretch";
    return s;
}

EnhanceResult enhance_detailed(const RgbImage& img, const PipelineConfig& cfg) {
    cfg.validate();
    if (img.pixel_count() == 0) throw InputError("cannot enhance an empty image");

    // The decomposition does not depend on the order, so it is shared by all candidates.
    std::vector<ScaleStack> stacks(3);
    parallel_for(3, cfg.threads, [&](std::size_t c) {
        stacks[c] = decompose(img.channel(static_cast<int>(c)), cfg.levels, cfg.sigma0);
    });

    std::vector<FractionalKernel> kernels;
    kernels.reserve(cfg.orders.size());
    for (double v : cfg.orders) kernels.emplace_back(v, cfg.truncation, cfg.mode, cfg.boost);

    const double gain = cfg.effective_approx_gain();
    std::vector<FusionCandidate> candidates(cfg.orders.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        candidates[i].order = cfg.orders[i];
        candidates[i].image = RgbImage(img.width(), img.height());
    }
    parallel_for(candidates.size() * 3, cfg.threads, [&](std::size_t task) {
        const std::size_t i = task / 3;
        const int c = static_cast<int>(task % 3);
        candidates[i].image.channel(c) = reconstruct(enhance_stack(stacks[c], kernels[i], cfg.lambda), gain);
    });
    parallel_for(candidates.size(), cfg.threads,
                 [&](std::size_t i) { candidates[i].score = score_candidate(candidates[i].image); });

    EnhanceResult res;
    res.orders = cfg.orders;
    for (const auto& c : candidates) res.scores.push_back(c.score);
    res.weights = normalize_weights(res.scores);
    res.unclamped = blend(candidates, res.weights, cfg.strategy);
    res.output = clamp(res.unclamped);
    if (cfg.stretch) res.output = percentile_stretch(res.output);
    return res;
}

RgbImage enhance_image(const RgbImage& img, const PipelineConfig& cfg) {
    return enhance_detailed(img, cfg).output;
}

RgbImage percentile_stretch(const RgbImage& img, double low_pct, double high_pct) {
    RgbImage out = img;
    for (int c = 0; c < 3; ++c) {
        auto src = img.channel(c).samples();
        std::vector<double> sorted(src.begin(), src.end());
        std::sort(sorted.begin(), sorted.end());
        const double last = static_cast<double>(sorted.size() - 1);
        const double lo = sorted[static_cast<std::size_t>(std::floor(low_pct / 100.0 * last))];
        const double hi = sorted[static_cast<std::size_t>(std::ceil(high_pct / 100.0 * last))];
        if (!(hi - lo > 1e-12)) continue;
        auto dst = out.channel(c).samples();
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = std::clamp((src[i] - lo) / (hi - lo), 0.0, 1.0);
    }
    return out;
}

double BenchReport::mean_runtime_ms() const {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& r : rows) {
        if (!r.ok) continue;
        sum += r.runtime_ms;
        ++n;
    }
    return n ? sum / static_cast<double>(n) : 0.0;
}

std::size_t BenchReport::failures() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const BenchRow& r) { return !r.ok; }));
}

BenchReport run_batch(const std::vector<BatchInput>& inputs, const PipelineConfig& cfg, const BatchOptions& opts) {
    if (inputs.empty()) throw InputError("batch has no inputs");
    cfg.validate();
    const int repeats = std::max(opts.repeats, 1);

    BenchReport report;
    report.config_summary = cfg.summary();
    report.rows.reserve(inputs.size());
    for (const auto& in : inputs) {
        BenchRow row;
        row.image_id = in.id;
        try {
            const RgbImage src = in.load();
            RgbImage out;
            double total_ms = 0.0;
            for (int rep = 0; rep < repeats; ++rep) {
                const auto t0 = std::chrono::steady_clock::now();
                out = enhance_image(src, cfg);
                const auto t1 = std::chrono::steady_clock::now();
                total_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
            }
            row.runtime_ms = std::max(total_ms / repeats, 1e-6);
            if (opts.with_metrics) row.metrics = evaluate(out, &src);
            if (opts.keep_outputs) row.output = std::move(out);
            row.ok = true;
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace fracfuse
