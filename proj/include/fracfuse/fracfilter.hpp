#pragma once

#include <stdexcept>
#include <vector>

#include "fracfuse/image.hpp"

namespace fracfuse {

/// Raised for out-of-range configuration (orders, truncation, gains...).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class FilterMode { HighPass, HighBoost };

const char* to_string(FilterMode mode) noexcept;

/// Grünwald–Letnikov weights c_0..c_K of a fractional difference of order v.
struct GlCoefficients {
    double order = 0.0;
    int truncation = 0;
    std::vector<double> coeffs;
};

/// c_0 = 1, c_k = c_{k-1} (k - 1 - v) / k. Requires 0 <= v <= 2 and 1 <= K <= 16.
GlCoefficients gl_coefficients(double order, int truncation);

/// Square (2K+1)x(2K+1) mask built from eight directional GL rays.
///
/// The high-pass part is stored on its own; the high-boost configuration
/// only adds (A - 1) to the centre, and convolve() applies that term as a
/// separate (A - 1) * p addend so both modes share the same arithmetic.
class FractionalKernel {
public:
    FractionalKernel(double order, int truncation, FilterMode mode, double boost = 1.0);

    double order() const noexcept { return order_; }
    int truncation() const noexcept { return truncation_; }
    int size() const noexcept { return 2 * truncation_ + 1; }
    FilterMode mode() const noexcept { return mode_; }
    double boost() const noexcept { return boost_; }

    /// Centre-weight shift applied on top of the high-pass mask (0 for HPFC).
    double center_shift() const noexcept { return mode_ == FilterMode::HighBoost ? boost_ - 1.0 : 0.0; }

    /// Mask weight at offset (dx, dy) from the centre, |dx|,|dy| <= K.
    double weight(int dx, int dy) const noexcept;

    /// Full mask, row-major, size() x size().
    std::vector<double> weights() const;

    /// High-pass mask only (identical for both modes at equal order and K).
    const std::vector<double>& highpass_weights() const noexcept { return highpass_; }

private:
    double order_;
    int truncation_;
    FilterMode mode_;
    double boost_;
    std::vector<double> highpass_;
};

FractionalKernel build_kernel(double order, int truncation, FilterMode mode, double boost = 1.0);

/// 2-D correlation with replicate borders; output has the input's shape.
ImagePlane convolve(const ImagePlane& p, const FractionalKernel& k);

}  // namespace fracfuse
