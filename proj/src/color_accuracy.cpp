#include "uwiqa/color_accuracy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "uwiqa/error.hpp"

namespace uwiqa {

namespace {

constexpr double kPi = std::numbers::pi;

double deg_to_rad(double d) { return d * kPi / 180.0; }

double pow7_ratio(double c) {
  const double c7 = std::pow(c, 7.0);
  return c7 / (c7 + 6103515625.0);  // 25^7
}

// Hue angle of (a', b') in radians, [0, 2pi); zero for the origin.
double hue_angle(double ap, double b) {
  if (ap == 0.0 && b == 0.0) return 0.0;
  double h = std::atan2(b, ap);
  if (h < 0.0) h += 2.0 * kPi;
  return h;
}

}  // namespace

Ciede2000Breakdown ciede2000(const LabColor& ref, const LabColor& test,
                             const Ciede2000Params& params) {
  if (!(params.kL > 0.0 && params.kC > 0.0 && params.kH > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "CIEDE2000 weighing factors must be positive");
  }

  const double c1 = std::hypot(ref.a, ref.b);
  const double c2 = std::hypot(test.a, test.b);
  const double g = 0.5 * (1.0 - std::sqrt(pow7_ratio(0.5 * (c1 + c2))));

  const double a1p = (1.0 + g) * ref.a;
  const double a2p = (1.0 + g) * test.a;
  const double c1p = std::hypot(a1p, ref.b);
  const double c2p = std::hypot(a2p, test.b);
  const double h1p = hue_angle(a1p, ref.b);
  const double h2p = hue_angle(a2p, test.b);
  const double chroma_product = c1p * c2p;

  const double dLp = test.L - ref.L;
  const double dCp = c2p - c1p;

  double dhp = 0.0;
  if (chroma_product != 0.0) {
    dhp = h2p - h1p;
    if (dhp > kPi) dhp -= 2.0 * kPi;
    if (dhp < -kPi) dhp += 2.0 * kPi;
  }
  const double dHp = 2.0 * std::sqrt(chroma_product) * std::sin(dhp / 2.0);

  const double mean_L = 0.5 * (ref.L + test.L);
  const double mean_C = 0.5 * (c1p + c2p);

  double mean_h = h1p + h2p;
  if (chroma_product != 0.0) {
    if (std::abs(h1p - h2p) <= kPi) {
      mean_h *= 0.5;
    } else if (mean_h < 2.0 * kPi) {
      mean_h = 0.5 * (mean_h + 2.0 * kPi);
    } else {
      mean_h = 0.5 * (mean_h - 2.0 * kPi);
    }
  }

  const double t = 1.0 - 0.17 * std::cos(mean_h - deg_to_rad(30.0)) +
                   0.24 * std::cos(2.0 * mean_h) +
                   0.32 * std::cos(3.0 * mean_h + deg_to_rad(6.0)) -
                   0.20 * std::cos(4.0 * mean_h - deg_to_rad(63.0));

  const double l50 = (mean_L - 50.0) * (mean_L - 50.0);
  Ciede2000Breakdown out;
  out.dL = dLp;
  out.dC = dCp;
  out.dH = dHp;
  out.SL = 1.0 + 0.015 * l50 / std::sqrt(20.0 + l50);
  out.SC = 1.0 + 0.045 * mean_C;
  out.SH = 1.0 + 0.015 * mean_C * t;

  const double mean_h_deg = mean_h * 180.0 / kPi;
  const double d_theta =
      deg_to_rad(30.0) * std::exp(-std::pow((mean_h_deg - 275.0) / 25.0, 2.0));
  const double rc = 2.0 * std::sqrt(pow7_ratio(mean_C));
  const double rt = -std::sin(2.0 * d_theta) * rc;

  const double tl = dLp / (params.kL * out.SL);
  const double tc = dCp / (params.kC * out.SC);
  const double th = dHp / (params.kH * out.SH);
  out.dR = rt * tc * th;
  // The sum is non-negative analytically; clamp rounding residue.
  out.value = std::sqrt(std::max(0.0, tl * tl + tc * tc + th * th + out.dR));
  return out;
}

AngularError reproduction_angular_error(const Rgb& patch) {
  if (patch.r < 0.0 || patch.g < 0.0 || patch.b < 0.0) {
    throw Error(ErrorKind::kInvalidArgument,
                "reproduction error needs non-negative RGB components");
  }
  // Sorted components make the floating-point result independent of channel order.
  std::array<double, 3> v{patch.r, patch.g, patch.b};
  std::sort(v.begin(), v.end());
  const double dot = v[0] + v[1] + v[2];
  if (dot == 0.0) {
    throw Error(ErrorKind::kUndefinedAngle,
                "reproduction error is undefined for the zero vector");
  }
  // |v x (1,1,1)| and v . (1,1,1); atan2 stays accurate near the diagonal
  // where arccos loses precision.
  const double cross = std::sqrt((v[1] - v[0]) * (v[1] - v[0]) + (v[2] - v[0]) * (v[2] - v[0]) +
                                 (v[2] - v[1]) * (v[2] - v[1]));
  return {std::atan2(cross, dot) * 180.0 / kPi};
}

double euclidean_distance(const Triple& a, const Triple& b, ColorSpaceTag) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace uwiqa
