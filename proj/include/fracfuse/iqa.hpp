#pragma once

#include <optional>
#include <stdexcept>

#include "fracfuse/image.hpp"

namespace fracfuse {

/// CEF is a ratio against the original's colourfulness; a grayscale
/// original has none, so the ratio does not exist.
class UndefinedMetric : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct MetricReport {
    double entropy = 0.0;
    double avg_gradient = 0.0;
    double colourfulness = 0.0;
    std::optional<double> cef;
    double gcf = 0.0;
    double uiqm = 0.0;
    double uciqe = 0.0;
};

// Gray-level metrics take a quantized plane (integer samples in [0,255]).

/// Shannon entropy of the 256-bin histogram, in bits.
double entropy(const ImagePlane& quantized);

/// Mean of sqrt((Gx^2 + Gy^2) / 2) over forward differences. Needs at least 2x2.
double avg_gradient(const ImagePlane& quantized);

// Colour metrics take an RGB image with samples in [0,1] and work on the 0-255 scale.

/// Hasler–Süsstrunk colourfulness with population statistics.
double colourfulness(const RgbImage& img);

/// colourfulness(enhanced) / colourfulness(original); UndefinedMetric when the
/// original has zero colourfulness.
double cef(const RgbImage& enhanced, const RgbImage& original);

/// Global Contrast Factor over nine resolutions. Needs at least 2x2.
double gcf(const RgbImage& img);

struct UiqmParts {
    double uicm = 0.0;
    double uism = 0.0;
    double uiconm = 0.0;
    double uiqm = 0.0;
};

/// Underwater image quality measure and its three components. Needs at least one 8x8 block.
UiqmParts uiqm_parts(const RgbImage& img);
double uiqm(const RgbImage& img);

/// Underwater colour image quality evaluation in CIELab.
double uciqe(const RgbImage& img);

/// Full report on the 8-bit version of `img` (what would be written to disk).
/// cef is filled when `original` is given and has non-zero colourfulness.
MetricReport evaluate(const RgbImage& img, const RgbImage* original = nullptr);

}  // namespace fracfuse
