#pragma once

#include <span>
#include <vector>

#include "fracfuse/image.hpp"

namespace fracfuse {

enum class BlendStrategy { Weighted, Argmax };

const char* to_string(BlendStrategy strategy) noexcept;

struct FusionCandidate {
    double order = 0.0;
    RgbImage image;
    double score = 0.0;
};

struct FusionWeights {
    std::vector<double> weights;
};

/// Entropy (bits) times population stddev (0-255 scale) of the quantized luminance.
double score_candidate(const RgbImage& img);

/// w_i = s_i / sum(s), uniform when every score is zero. Throws std::logic_error
/// on a negative or non-finite score, InputError on an empty list.
FusionWeights normalize_weights(std::span<const double> scores);

/// Index of the highest-scoring candidate; ties go to the lowest order.
std::size_t argmax_candidate(std::span<const FusionCandidate> candidates);

/// Weighted: per-sample convex combination, summed in candidate order.
/// Argmax: a copy of the winning candidate.
RgbImage blend(std::span<const FusionCandidate> candidates, const FusionWeights& w, BlendStrategy strategy);

}  // namespace fracfuse
