#pragma once

#include <span>
#include <vector>

#include "uwiqa/image.hpp"

namespace uwiqa {

/// Single-channel plane of doubles, row-major.
struct Plane {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  double at(int x, int y) const {
    return data[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                static_cast<std::size_t>(x)];
  }
};

/// Extracts channel `c` of an image in 8-bit scale.
Plane channel_plane_8bit(const ImageBuffer& img, int c);

/// Sobel gradient magnitude sqrt(gx^2 + gy^2) with replicated borders.
Plane sobel_magnitude(const Plane& src);

/// Normalized 1-D Gaussian taps of odd length `size`.
std::vector<double> gaussian_kernel(int size, double sigma);

/// Separable convolution. `valid` keeps only positions where the kernel fits
/// entirely (output shrinks by size-1); otherwise borders are replicated.
Plane convolve_separable(const Plane& src, std::span<const double> kernel,
                         bool valid);

/// Gaussian blur of every channel with replicated borders; same depth.
ImageBuffer gaussian_blur(const ImageBuffer& img, double sigma);

}  // namespace uwiqa
