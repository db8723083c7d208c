#pragma once

#include <cstddef>

#include "uwiqa/config.hpp"
#include "uwiqa/image.hpp"

namespace uwiqa {

struct MsePsnr {
  double mse = 0.0;
  /// +infinity when the images are identical.
  double psnr = 0.0;

  bool psnr_is_infinite() const noexcept;
};

/// Sample-wise MSE in the images' native scale and PSNR against that
/// scale's full range. Throws kDimensionMismatch.
MsePsnr mse_psnr(const ImageBuffer& ref, const ImageBuffer& test);

/// Mean of the Gaussian-windowed SSIM map over positions where the window
/// fits. Colour inputs are converted with to_grayscale first.
double ssim(const ImageBuffer& ref, const ImageBuffer& test,
            const SsimParams& params = {});

struct QuBreakdown {
  double ssim = 0.0;
  double mean_delta_e00 = 0.0;
  double value = 0.0;
};

/// 0.5 * ssim + 0.5 * (1 - mean per-pixel CIEDE2000 / 100).
QuBreakdown qu(const ImageBuffer& ref, const ImageBuffer& test,
               const SsimParams& params = {});

/// Mean per-pixel CIEDE2000 between two 3-channel images.
double mean_delta_e00(const ImageBuffer& ref, const ImageBuffer& test);

/// Shannon entropy (bits) of the 256-bin gray histogram.
double entropy(const ImageBuffer& img);

struct EdgeCount {
  std::size_t count = 0;
  double ratio = 0.0;
};

/// Pixels whose Sobel magnitude on the 8-bit gray image exceeds `threshold`.
EdgeCount visible_edge_count(const ImageBuffer& img, double threshold = 25.0);

}  // namespace uwiqa
