#include "uwiqa/nr_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "uwiqa/colorspace.hpp"
#include "uwiqa/error.hpp"
#include "uwiqa/filters.hpp"

namespace uwiqa {

namespace {

void require_rgb(const ImageBuffer& img, const char* measure) {
  if (img.channels() != 3) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(measure) + " needs a 3-channel image");
  }
}

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double population_variance(std::span<const double> v, double mean) {
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(v.size());
}

struct BlockGrid {
  int size;
  int cols;
  int rows;
  int count() const { return cols * rows; }
};

BlockGrid block_grid(const ImageBuffer& img, int block) {
  const BlockGrid grid{block, img.width() / block, img.height() / block};
  if (grid.count() == 0) {
    throw Error(ErrorKind::kDegenerateSize,
                "image " + std::to_string(img.width()) + "x" +
                    std::to_string(img.height()) + " is smaller than one " +
                    std::to_string(block) + "x" + std::to_string(block) +
                    " block");
  }
  return grid;
}

// Block enhancement measure: 2/(k1 k2) * sum log(max/min).
// Trailing partial blocks are ignored; degenerate blocks contribute 0.
double eme(const Plane& p, const BlockGrid& grid) {
  double acc = 0.0;
  for (int by = 0; by < grid.rows; ++by) {
    for (int bx = 0; bx < grid.cols; ++bx) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (int y = by * grid.size; y < (by + 1) * grid.size; ++y) {
        for (int x = bx * grid.size; x < (bx + 1) * grid.size; ++x) {
          const double v = p.at(x, y);
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
      if (lo > 0.0 && hi > lo) acc += std::log(hi / lo);
    }
  }
  return 2.0 * acc / grid.count();
}

double plip_difference(double a, double b, double gamma) {
  return gamma * (a - b) / (gamma - b);
}

double plip_sum(double a, double b, double gamma) { return a + b - a * b / gamma; }

}  // namespace

double weighted_sum(const std::array<double, 3>& weights, double a, double b,
                    double c) {
  return weights[0] * a + weights[1] * b + weights[2] * c;
}

TrimmedStats alpha_trimmed_stats(std::span<const double> values, double alpha) {
  if (!(alpha >= 0.0 && alpha < 0.5)) {
    throw Error(ErrorKind::kInvalidArgument, "trim fraction must lie in [0, 0.5)");
  }
  const std::size_t n = values.size();
  // The epsilon keeps products like 0.1 * 30 from rounding up past an integer.
  const auto trim = static_cast<std::size_t>(
      std::ceil(alpha * static_cast<double>(n) - 1e-9));
  if (n == 0 || 2 * trim >= n) {
    throw Error(ErrorKind::kEmptyAfterTrim,
                "no samples left after trimming " + std::to_string(trim) +
                    " per tail from " + std::to_string(n));
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::span<const double> kept(sorted.data() + trim, n - 2 * trim);
  TrimmedStats stats;
  stats.alpha = alpha;
  stats.mean = mean_of(kept);
  stats.variance = population_variance(kept, stats.mean);
  return stats;
}

UciqeBreakdown uciqe(const ImageBuffer& img, const MeasureConstants& constants) {
  require_rgb(img, "UCIQE");
  const ImageBuffer rgb = to_u8(img);
  const auto data = rgb.u8();
  const std::size_t n = rgb.pixel_count();

  std::vector<double> chroma(n);
  std::vector<double> lum(n);
  double sat_sum = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    const std::uint8_t r = data[3 * p];
    const std::uint8_t g = data[3 * p + 1];
    const std::uint8_t b = data[3 * p + 2];
    const LchColor lch = lab_to_lch(srgb8_to_lab(r, g, b));
    chroma[p] = lch.C * constants.uciqe_chroma_scale;
    sat_sum += saturation(lch);
    if (constants.uciqe_luminance == UciqeLuminance::kLabL) {
      lum[p] = lch.L;
    } else {
      lum[p] = 100.0 * (kLumaR * r + kLumaG * g + kLumaB * b) / 255.0;
    }
  }

  UciqeBreakdown out;
  out.sigma_c = std::sqrt(population_variance(chroma, mean_of(chroma)));
  out.mu_s = sat_sum / static_cast<double>(n);

  const auto extreme = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::round(constants.uciqe_extreme_fraction * static_cast<double>(n))));
  std::nth_element(lum.begin(), lum.begin() + static_cast<std::ptrdiff_t>(extreme - 1),
                   lum.end());
  const double bottom =
      std::accumulate(lum.begin(), lum.begin() + static_cast<std::ptrdiff_t>(extreme), 0.0) /
      static_cast<double>(extreme);
  std::nth_element(lum.begin(), lum.end() - static_cast<std::ptrdiff_t>(extreme), lum.end());
  const double top =
      std::accumulate(lum.end() - static_cast<std::ptrdiff_t>(extreme), lum.end(), 0.0) /
      static_cast<double>(extreme);
  out.con_l = std::clamp((top - bottom) / 100.0, 0.0, 1.0);

  out.value = weighted_sum(constants.uciqe_weights, out.sigma_c, out.con_l, out.mu_s);
  return out;
}

double uicm(const ImageBuffer& img, const MeasureConstants& constants) {
  require_rgb(img, "UICM");
  const std::size_t n = img.pixel_count();
  const double scale = 255.0 / img.max_value();
  std::vector<double> rg(n);
  std::vector<double> yb(n);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const std::size_t p = static_cast<std::size_t>(y) * static_cast<std::size_t>(img.width()) +
                            static_cast<std::size_t>(x);
      const double r = img.at(x, y, 0) * scale;
      const double g = img.at(x, y, 1) * scale;
      const double b = img.at(x, y, 2) * scale;
      rg[p] = r - g;
      yb[p] = 0.5 * (r + g) - b;
    }
  }
  const TrimmedStats s_rg = alpha_trimmed_stats(rg, constants.uicm_trim_alpha);
  const TrimmedStats s_yb = alpha_trimmed_stats(yb, constants.uicm_trim_alpha);
  return constants.uicm_coeffs[0] * std::sqrt(s_rg.mean * s_rg.mean + s_yb.mean * s_yb.mean) +
         constants.uicm_coeffs[1] * std::sqrt(s_rg.variance + s_yb.variance);
}

double uism(const ImageBuffer& img, const MeasureConstants& constants) {
  require_rgb(img, "UISM");
  const BlockGrid grid = block_grid(img, constants.block_size);
  constexpr std::array<double, 3> kWeights{kLumaR, kLumaG, kLumaB};
  double total = 0.0;
  for (int c = 0; c < 3; ++c) {
    Plane channel = channel_plane_8bit(img, c);
    const Plane edges = sobel_magnitude(channel);
    // Edge map weighted by the channel itself.
    for (std::size_t i = 0; i < channel.data.size(); ++i) {
      channel.data[i] *= edges.data[i];
    }
    total += kWeights[static_cast<std::size_t>(c)] * eme(channel, grid);
  }
  return total;
}

double uiconm(const ImageBuffer& img, const MeasureConstants& constants) {
  require_rgb(img, "UIConM");
  const BlockGrid grid = block_grid(img, constants.block_size);
  const double scale = 255.0 / img.max_value();
  const double gamma = constants.plip_gamma;
  double acc = 0.0;
  for (int by = 0; by < grid.rows; ++by) {
    for (int bx = 0; bx < grid.cols; ++bx) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (int y = by * grid.size; y < (by + 1) * grid.size; ++y) {
        for (int x = bx * grid.size; x < (bx + 1) * grid.size; ++x) {
          for (int c = 0; c < 3; ++c) {
            const double v = img.at(x, y, c) * scale;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
          }
        }
      }
      double top = hi - lo;
      double bottom = hi + lo;
      if (constants.uiconm_plip) {
        top = plip_difference(hi, lo, gamma);
        bottom = plip_sum(hi, lo, gamma);
      }
      if (top <= 0.0 || bottom <= 0.0) continue;
      const double ratio = top / bottom;
      acc += ratio * std::log(ratio);
    }
  }
  return -acc / grid.count();
}

UiqmBreakdown uiqm(const ImageBuffer& img, const MeasureConstants& constants) {
  require_rgb(img, "UIQM");
  block_grid(img, constants.block_size);
  UiqmBreakdown out;
  out.uicm = uicm(img, constants);
  out.uism = uism(img, constants);
  out.uiconm = uiconm(img, constants);
  out.value = weighted_sum(constants.uiqm_weights, out.uicm, out.uism, out.uiconm);
  return out;
}

CcfBreakdown ccf(const ImageBuffer& img, const MeasureConstants& constants,
                 double edge_threshold) {
  require_rgb(img, "CCF");
  const std::size_t n = img.pixel_count();
  const double scale = 255.0 / img.max_value();

  std::vector<double> rg(n);
  std::vector<double> yb(n);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const std::size_t p = static_cast<std::size_t>(y) * static_cast<std::size_t>(img.width()) +
                            static_cast<std::size_t>(x);
      const double r = img.at(x, y, 0) * scale;
      const double g = img.at(x, y, 1) * scale;
      const double b = img.at(x, y, 2) * scale;
      rg[p] = std::log(r + 1.0) - std::log(g + 1.0);
      yb[p] = std::log(0.5 * (r + g) + 1.0) - std::log(b + 1.0);
    }
  }
  const double mean_rg = mean_of(rg);
  const double mean_yb = mean_of(yb);
  CcfBreakdown out;
  out.colorfulness =
      std::sqrt(population_variance(rg, mean_rg) + population_variance(yb, mean_yb)) +
      0.3 * std::sqrt(mean_rg * mean_rg + mean_yb * mean_yb);

  const std::vector<double> gray = gray_plane_8bit(img);
  const Plane grad = sobel_magnitude(Plane{img.width(), img.height(), gray});
  double edge_sum = 0.0;
  std::size_t edge_count = 0;
  double energy = 0.0;
  constexpr double kMaxAxisGradient = 4.0 * 255.0;
  for (double m : grad.data) {
    if (m > edge_threshold) {
      edge_sum += m;
      ++edge_count;
    }
    const double u = m / kMaxAxisGradient;
    energy += u * u;
  }
  out.contrast = edge_count > 0 ? constants.ccf_gradient_scale * edge_sum /
                                       static_cast<double>(edge_count)
                                 : 0.0;
  out.fog_density = 1.0 / (1.0 + energy / static_cast<double>(n));

  out.value = weighted_sum(constants.ccf_weights, out.colorfulness, out.contrast,
                           out.fog_density);
  return out;
}

}  // namespace uwiqa
