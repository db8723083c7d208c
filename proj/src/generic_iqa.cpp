#include "uwiqa/generic_iqa.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "uwiqa/color_accuracy.hpp"
#include "uwiqa/colorspace.hpp"
#include "uwiqa/error.hpp"
#include "uwiqa/filters.hpp"

namespace uwiqa {

namespace {

void require_same_shape(const ImageBuffer& a, const ImageBuffer& b) {
  if (!a.same_shape(b)) {
    throw Error(ErrorKind::kDimensionMismatch,
                "image shapes differ: " + std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + "x" + std::to_string(a.channels()) +
                    " vs " + std::to_string(b.width()) + "x" +
                    std::to_string(b.height()) + "x" + std::to_string(b.channels()));
  }
}

Plane gray_plane(const ImageBuffer& img) {
  return Plane{img.width(), img.height(), gray_plane_8bit(img)};
}

Plane product(const Plane& a, const Plane& b) {
  Plane out{a.width, a.height, std::vector<double>(a.data.size())};
  for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = a.data[i] * b.data[i];
  return out;
}

}  // namespace

bool MsePsnr::psnr_is_infinite() const noexcept { return std::isinf(psnr); }

MsePsnr mse_psnr(const ImageBuffer& ref, const ImageBuffer& test) {
  require_same_shape(ref, test);
  if (ref.depth() != test.depth()) {
    throw Error(ErrorKind::kDimensionMismatch, "image sample depths differ");
  }
  double acc = 0.0;
  for (int y = 0; y < ref.height(); ++y) {
    for (int x = 0; x < ref.width(); ++x) {
      for (int c = 0; c < ref.channels(); ++c) {
        const double d = ref.at(x, y, c) - test.at(x, y, c);
        acc += d * d;
      }
    }
  }
  MsePsnr out;
  out.mse = acc / static_cast<double>(ref.sample_count());
  const double range = ref.max_value();
  out.psnr = out.mse == 0.0 ? std::numeric_limits<double>::infinity()
                            : 10.0 * std::log10(range * range / out.mse);
  return out;
}

double ssim(const ImageBuffer& ref, const ImageBuffer& test, const SsimParams& params) {
  require_same_shape(ref, test);
  if (params.window < 3 || params.window % 2 == 0 || !(params.k1 > 0.0) ||
      !(params.k2 > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "invalid SSIM parameters");
  }
  if (ref.width() < params.window || ref.height() < params.window) {
    throw Error(ErrorKind::kDegenerateSize,
                "image smaller than the " + std::to_string(params.window) +
                    "-pixel SSIM window");
  }
  const Plane x = gray_plane(ref);
  const Plane y = gray_plane(test);
  const std::vector<double> kernel = gaussian_kernel(params.window, params.sigma);

  const Plane mu_x = convolve_separable(x, kernel, true);
  const Plane mu_y = convolve_separable(y, kernel, true);
  const Plane xx = convolve_separable(product(x, x), kernel, true);
  const Plane yy = convolve_separable(product(y, y), kernel, true);
  const Plane xy = convolve_separable(product(x, y), kernel, true);

  const double c1 = (params.k1 * params.dynamic_range) * (params.k1 * params.dynamic_range);
  const double c2 = (params.k2 * params.dynamic_range) * (params.k2 * params.dynamic_range);
  double acc = 0.0;
  for (std::size_t i = 0; i < mu_x.data.size(); ++i) {
    const double mx = mu_x.data[i];
    const double my = mu_y.data[i];
    const double vx = xx.data[i] - mx * mx;
    const double vy = yy.data[i] - my * my;
    const double cov = xy.data[i] - mx * my;
    acc += ((2.0 * mx * my + c1) * (2.0 * cov + c2)) /
           ((mx * mx + my * my + c1) * (vx + vy + c2));
  }
  return acc / static_cast<double>(mu_x.data.size());
}

double mean_delta_e00(const ImageBuffer& ref, const ImageBuffer& test) {
  require_same_shape(ref, test);
  if (ref.channels() != 3) {
    throw Error(ErrorKind::kInvalidArgument, "colour difference needs 3-channel images");
  }
  const ImageBuffer a = to_u8(ref);
  const ImageBuffer b = to_u8(test);
  const auto da = a.u8();
  const auto db = b.u8();
  double acc = 0.0;
  const std::size_t n = a.pixel_count();
  for (std::size_t p = 0; p < n; ++p) {
    const LabColor la = srgb8_to_lab(da[3 * p], da[3 * p + 1], da[3 * p + 2]);
    const LabColor lb = srgb8_to_lab(db[3 * p], db[3 * p + 1], db[3 * p + 2]);
    acc += ciede2000(la, lb).value;
  }
  return acc / static_cast<double>(n);
}

QuBreakdown qu(const ImageBuffer& ref, const ImageBuffer& test, const SsimParams& params) {
  QuBreakdown out;
  out.ssim = ssim(ref, test, params);
  out.mean_delta_e00 = mean_delta_e00(ref, test);
  out.value = 0.5 * out.ssim + 0.5 * (1.0 - out.mean_delta_e00 / 100.0);
  return out;
}

double entropy(const ImageBuffer& img) {
  const std::vector<double> gray = gray_plane_8bit(img);
  std::array<std::size_t, 256> hist{};
  for (double v : gray) ++hist[static_cast<std::size_t>(v)];
  const double n = static_cast<double>(gray.size());
  double bits = 0.0;
  for (std::size_t count : hist) {
    if (count == 0) continue;
    const double p = static_cast<double>(count) / n;
    bits -= p * std::log2(p);
  }
  return bits;
}

EdgeCount visible_edge_count(const ImageBuffer& img, double threshold) {
  const Plane grad = sobel_magnitude(gray_plane(img));
  EdgeCount out;
  for (double m : grad.data) {
    if (m > threshold) ++out.count;
  }
  out.ratio = static_cast<double>(out.count) / static_cast<double>(grad.data.size());
  return out;
}

}  // namespace uwiqa
