#pragma once

#include <span>

#include "uwiqa/config.hpp"
#include "uwiqa/image.hpp"

namespace uwiqa {

struct TrimmedStats {
  double mean = 0.0;
  double variance = 0.0;
  double alpha = 0.0;
};

/// Mean and population variance after dropping ceil(alpha * N) samples from
/// each tail of the sorted sequence. Throws kEmptyAfterTrim when nothing is
/// left and kInvalidArgument for alpha outside [0, 0.5).
TrimmedStats alpha_trimmed_stats(std::span<const double> values, double alpha);

struct UciqeBreakdown {
  double sigma_c = 0.0;
  double con_l = 0.0;
  double mu_s = 0.0;
  double value = 0.0;
};

struct UiqmBreakdown {
  double uicm = 0.0;
  double uism = 0.0;
  double uiconm = 0.0;
  double value = 0.0;
};

/// The CCF components are reconstructions: the defining reference is not
/// reproduced here, only its attribute structure.
///   colorfulness  sqrt(var rg + var yb) + 0.3 sqrt(mean rg^2 + mean yb^2)
///                 on log-opponent channels rg = ln(R+1) - ln(G+1),
///                 yb = ln((R+G)/2 + 1) - ln(B+1)
///   contrast      ccf_gradient_scale * mean Sobel magnitude over visible-edge pixels
///   fog_density   1 / (1 + mean((|grad| / 1020)^2))
struct CcfBreakdown {
  double colorfulness = 0.0;
  double contrast = 0.0;
  double fog_density = 0.0;
  double value = 0.0;
};

/// Chroma std-dev, top/bottom luminance contrast and mean saturation in
/// CIELab, combined with `constants.uciqe_weights`.
UciqeBreakdown uciqe(const ImageBuffer& img, const MeasureConstants& constants = {});

/// Colourfulness from trimmed opponent statistics, sharpness from
/// edge-weighted block contrast (EME), contrast from block Michelson terms.
/// Throws kDegenerateSize when the image is smaller than one block.
UiqmBreakdown uiqm(const ImageBuffer& img, const MeasureConstants& constants = {});

double uicm(const ImageBuffer& img, const MeasureConstants& constants = {});
double uism(const ImageBuffer& img, const MeasureConstants& constants = {});
double uiconm(const ImageBuffer& img, const MeasureConstants& constants = {});

CcfBreakdown ccf(const ImageBuffer& img, const MeasureConstants& constants = {},
                 double edge_threshold = 25.0);

/// Weighted sum used by every breakdown; exposed so callers and tests
/// recombine components the same way.
double weighted_sum(const std::array<double, 3>& weights, double a, double b,
                    double c);

}  // namespace uwiqa
