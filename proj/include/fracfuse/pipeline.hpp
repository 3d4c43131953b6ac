#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fracfuse/fracfilter.hpp"
#include "fracfuse/fusion.hpp"
#include "fracfuse/image.hpp"
#include "fracfuse/iqa.hpp"

namespace fracfuse {

struct PipelineConfig {
    FilterMode mode = FilterMode::HighBoost;
    std::vector<double> orders{0.25, 0.5, 0.75};
    int truncation = 2;
    double boost = 1.0;
    int levels = 3;
    double sigma0 = 1.0;
    double lambda = 0.8;
    /// Overrides the mode's default approximation gain (HPFC 0.85, HBFC 1.0).
    std::optional<double> approx_gain;
    BlendStrategy strategy = BlendStrategy::Weighted;
    /// Per-channel 0.5% / 99.5% percentile stretch after clamping.
    bool stretch = false;
    /// Worker threads for candidate/channel work; results do not depend on it.
    int threads = 1;

    double effective_approx_gain() const noexcept {
        if (approx_gain) return *approx_gain;
        return mode == FilterMode::HighPass ? 0.85 : 1.0;
    }

    /// Throws ConfigError describing the first violated range.
    void validate() const;

    /// Compact single-token description, e.g. "hbfc/v=0.25:0.5:0.75/K=2/A=1/L=3/s0=1/lam=0.8/ga=1/weighted".
    std::string summary() const;
};

struct EnhanceResult {
    /// Blended image before clamping.
    RgbImage unclamped;
    /// Final image: clamped to [0,1] (and stretched when requested).
    RgbImage output;
    std::vector<double> orders;
    std::vector<double> scores;
    FusionWeights weights;
};

EnhanceResult enhance_detailed(const RgbImage& img, const PipelineConfig& cfg);

RgbImage enhance_image(const RgbImage& img, const PipelineConfig& cfg);

/// Linear per-channel stretch mapping the 0.5% / 99.5% percentiles to [0,1].
RgbImage percentile_stretch(const RgbImage& img, double low_pct = 0.5, double high_pct = 99.5);

struct BenchRow {
    std::string image_id;
    bool ok = false;
    std::string error;
    std::optional<MetricReport> metrics;
    /// Mean wall-clock of enhance_image over the repeats.
    double runtime_ms = 0.0;
    RgbImage output;
};

struct BenchReport {
    std::string config_summary;
    std::vector<BenchRow> rows;

    double mean_runtime_ms() const;
    std::size_t failures() const;
};

/// One batch input; `load` defers decoding so decode failures become error rows.
struct BatchInput {
    std::string id;
    std::function<RgbImage()> load;
};

struct BatchOptions {
    bool with_metrics = true;
    int repeats = 1;
    bool keep_outputs = false;
};

/// Throws InputError on an empty input list and ConfigError on a bad config;
/// per-image failures become error rows.
BenchReport run_batch(const std::vector<BatchInput>& inputs, const PipelineConfig& cfg, const BatchOptions& opts = {});

}  // namespace fracfuse
