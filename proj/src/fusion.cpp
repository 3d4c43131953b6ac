#include "fracfuse/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracfuse/iqa.hpp"

namespace fracfuse {

const char* to_string(BlendStrategy strategy) noexcept {
    return strategy == BlendStrategy::Weighted ? "weighted" : "argmax";
}

double score_candidate(const RgbImage& img) {
    const ImagePlane q = quantize_u8(luminance(img));
    return entropy(q) * moments(q).stddev;
}

FusionWeights normalize_weights(std::span<const double> scores) {
    if (scores.empty()) {
        throw InputError("normalize_weights needs at least one score");
    }
    double total = 0.0;
    for (double s : scores) {
        if (!(s >= 0.0) || !std::isfinite(s)) {
            throw std::logic_error("fusion scores must be finite and non-negative");
        }
        total += s;
    }
    FusionWeights w;
    w.weights.resize(scores.size());
    if (total == 0.0) {
        const double u = 1.0 / static_cast<double>(scores.size());
        std::fill(w.weights.begin(), w.weights.end(), u);
        return w;
    }
    for (std::size_t i = 0; i < scores.size(); ++i) w.weights[i] = scores[i] / total;
    return w;
}

std::size_t argmax_candidate(std::span<const FusionCandidate> candidates) {
    if (candidates.empty()) {
        throw InputError("argmax over an empty candidate list");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        const auto& c = candidates[i];
        const auto& b = candidates[best];
        if (c.score > b.score || (c.score == b.score && c.order < b.order)) best = i;
    }
    return best;
}

RgbImage blend(std::span<const FusionCandidate> candidates, const FusionWeights& w, BlendStrategy strategy) {
    if (candidates.empty()) {
        throw InputError("blend needs at least one candidate");
    }
    const RgbImage& first = candidates.front().image;
    for (const auto& c : candidates) {
        if (c.image.width() != first.width() || c.image.height() != first.height()) {
            throw InputError("fusion candidates differ in dimensions");
        }
    }
    if (strategy == BlendStrategy::Argmax) {
        return candidates[argmax_candidate(candidates)].image;
    }
    if (w.weights.size() != candidates.size()) {
        throw InputError("fusion weights are not aligned with candidates");
    }
    if (candidates.size() == 1) return first;

    RgbImage out(first.width(), first.height());
    for (int c = 0; c < 3; ++c) {
        auto dst = out.channel(c).samples();
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const double wi = w.weights[i];
            auto src = candidates[i].image.channel(c).samples();
            for (std::size_t p = 0; p < dst.size(); ++p) dst[p] += wi * src[p];
        }
    }
    return out;
}

}  // namespace fracfuse
