#include "uwiqa/filters.hpp"

#include <algorithm>
#include <cmath>

#include "uwiqa/error.hpp"

namespace uwiqa {

Plane channel_plane_8bit(const ImageBuffer& img, int c) {
  Plane p{img.width(), img.height(), {}};
  p.data.resize(img.pixel_count());
  const double scale = 255.0 / img.max_value();
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      p.data[static_cast<std::size_t>(y) * static_cast<std::size_t>(img.width()) +
             static_cast<std::size_t>(x)] = img.at(x, y, c) * scale;
    }
  }
  return p;
}

Plane sobel_magnitude(const Plane& src) {
  Plane out{src.width, src.height, std::vector<double>(src.data.size(), 0.0)};
  const int w = src.width;
  const int h = src.height;
  for (int y = 0; y < h; ++y) {
    const int ym = std::max(y - 1, 0);
    const int yp = std::min(y + 1, h - 1);
    for (int x = 0; x < w; ++x) {
      const int xm = std::max(x - 1, 0);
      const int xp = std::min(x + 1, w - 1);
      const double gx = (src.at(xp, ym) + 2.0 * src.at(xp, y) + src.at(xp, yp)) -
                        (src.at(xm, ym) + 2.0 * src.at(xm, y) + src.at(xm, yp));
      const double gy = (src.at(xm, yp) + 2.0 * src.at(x, yp) + src.at(xp, yp)) -
                        (src.at(xm, ym) + 2.0 * src.at(x, ym) + src.at(xp, ym));
      out.data[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
               static_cast<std::size_t>(x)] = std::sqrt(gx * gx + gy * gy);
    }
  }
  return out;
}

std::vector<double> gaussian_kernel(int size, double sigma) {
  if (size < 1 || size % 2 == 0 || !(sigma > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "gaussian kernel needs odd size and positive sigma");
  }
  std::vector<double> k(static_cast<std::size_t>(size));
  const int r = size / 2;
  double sum = 0.0;
  for (int i = -r; i <= r; ++i) {
    const double v = std::exp(-(i * i) / (2.0 * sigma * sigma));
    k[static_cast<std::size_t>(i + r)] = v;
    sum += v;
  }
  for (double& v : k) v /= sum;
  return k;
}

Plane convolve_separable(const Plane& src, std::span<const double> kernel,
                         bool valid) {
  const int k = static_cast<int>(kernel.size());
  const int r = k / 2;
  const int w = src.width;
  const int h = src.height;
  if (valid && (w < k || h < k)) {
    throw Error(ErrorKind::kDegenerateSize,
                "plane smaller than the convolution window");
  }
  const int out_w = valid ? w - k + 1 : w;
  const int out_h = valid ? h - k + 1 : h;

  // Horizontal pass over all rows.
  Plane tmp{out_w, h, std::vector<double>(static_cast<std::size_t>(out_w) *
                                              static_cast<std::size_t>(h))};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      double acc = 0.0;
      for (int i = 0; i < k; ++i) {
        const int sx = valid ? x + i : std::clamp(x + i - r, 0, w - 1);
        acc += kernel[static_cast<std::size_t>(i)] * src.at(sx, y);
      }
      tmp.data[static_cast<std::size_t>(y) * static_cast<std::size_t>(out_w) +
               static_cast<std::size_t>(x)] = acc;
    }
  }

  Plane out{out_w, out_h, std::vector<double>(static_cast<std::size_t>(out_w) *
                                                  static_cast<std::size_t>(out_h))};
  for (int y = 0; y < out_h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      double acc = 0.0;
      for (int i = 0; i < k; ++i) {
        const int sy = valid ? y + i : std::clamp(y + i - r, 0, h - 1);
        acc += kernel[static_cast<std::size_t>(i)] * tmp.at(x, sy);
      }
      out.data[static_cast<std::size_t>(y) * static_cast<std::size_t>(out_w) +
               static_cast<std::size_t>(x)] = acc;
    }
  }
  return out;
}

ImageBuffer gaussian_blur(const ImageBuffer& img, double sigma) {
  const int size = 2 * static_cast<int>(std::ceil(3.0 * sigma)) + 1;
  const std::vector<double> kernel = gaussian_kernel(size, sigma);
  ImageBuffer out(img.width(), img.height(), img.channels(), img.depth(),
                  img.encoding());
  for (int c = 0; c < img.channels(); ++c) {
    Plane p{img.width(), img.height(), {}};
    p.data.resize(img.pixel_count());
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) {
        p.data[static_cast<std::size_t>(y) * static_cast<std::size_t>(img.width()) +
               static_cast<std::size_t>(x)] = img.at(x, y, c);
      }
    }
    const Plane blurred = convolve_separable(p, kernel, false);
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) {
        const double v = blurred.at(x, y);
        const std::size_t i = out.index(x, y, c);
        if (out.depth() == SampleDepth::kU8) {
          out.u8()[i] = static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
        } else {
          out.f32()[i] = static_cast<float>(std::clamp(v, 0.0, 1.0));
        }
      }
    }
  }
  return out;
}

}  // namespace uwiqa
