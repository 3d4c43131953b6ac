#pragma once

#include <vector>

#include "fracfuse/fracfilter.hpp"
#include "fracfuse/image.hpp"

namespace fracfuse {

/// Undecimated decomposition: approx + sum(details) == source.
/// details[0] is the finest level.
struct ScaleStack {
    ImagePlane approx;
    std::vector<ImagePlane> details;
    std::vector<double> sigmas;
};

/// Sampled Gaussian taps w[-R..R], R = ceil(3 sigma), normalized to sum 1.
std::vector<double> gaussian_taps(double sigma);

/// Separable Gaussian blur with replicate borders.
ImagePlane gaussian_blur(const ImagePlane& p, double sigma);

/// L levels with sigma_l = sigma0 * 2^(l-1). Throws ConfigError for L < 1 or sigma0 <= 0.
ScaleStack decompose(const ImagePlane& p, int levels, double sigma0);

/// detail_l += lambda * convolve(detail_l, k) for every level; approx untouched.
ScaleStack enhance_stack(const ScaleStack& s, const FractionalKernel& k, double lambda);

/// approx_gain * approx + sum(details). No clamping.
ImagePlane reconstruct(const ScaleStack& s, double approx_gain);

}  // namespace fracfuse
