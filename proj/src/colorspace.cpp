#include "uwiqa/colorspace.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace uwiqa {

namespace {

// IEC 61966-2-1 linear sRGB -> XYZ.
constexpr double kRgbToXyz[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
};

// Reference white is the image of RGB (1,1,1), i.e. the row sums, so sRGB
// white lands on a = b = 0 exactly.
constexpr double kWhiteX = 0.4124564 + 0.3575761 + 0.1804375;
constexpr double kWhiteY = 0.2126729 + 0.7151522 + 0.0721750;
constexpr double kWhiteZ = 0.0193339 + 0.1191920 + 0.9503041;

constexpr double kEpsilon = 216.0 / 24389.0;
constexpr double kKappa = 24389.0 / 27.0;

double srgb_decode(double v) {
  return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

double srgb_encode(double v) {
  return v <= 0.0031308 ? 12.92 * v : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
}

double lab_f(double t) {
  return t > kEpsilon ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0;
}

double lab_f_inv(double f) {
  const double f3 = f * f * f;
  return f3 > kEpsilon ? f3 : (116.0 * f - 16.0) / kKappa;
}

using Matrix3 = std::array<std::array<double, 3>, 3>;

Matrix3 invert3(const double m[3][3]) {
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  Matrix3 inv{};
  inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
  inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
  inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
  inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
  inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
  inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
  inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
  inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
  inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
  return inv;
}

const Matrix3& xyz_to_rgb() {
  static const Matrix3 m = invert3(kRgbToXyz);
  return m;
}

const std::array<double, 256>& decode_lut() {
  static const std::array<double, 256> lut = [] {
    std::array<double, 256> t{};
    for (std::size_t i = 0; i < t.size(); ++i) {
      t[i] = srgb_decode(static_cast<double>(i) / 255.0);
    }
    return t;
  }();
  return lut;
}

LabColor linear_to_lab(double r, double g, double b) {
  const double x = kRgbToXyz[0][0] * r + kRgbToXyz[0][1] * g + kRgbToXyz[0][2] * b;
  const double y = kRgbToXyz[1][0] * r + kRgbToXyz[1][1] * g + kRgbToXyz[1][2] * b;
  const double z = kRgbToXyz[2][0] * r + kRgbToXyz[2][1] * g + kRgbToXyz[2][2] * b;
  const double fx = lab_f(x / kWhiteX);
  const double fy = lab_f(y / kWhiteY);
  const double fz = lab_f(z / kWhiteZ);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

}  // namespace

LabColor srgb_to_lab(Rgb unit_rgb) {
  return linear_to_lab(srgb_decode(std::clamp(unit_rgb.r, 0.0, 1.0)),
                       srgb_decode(std::clamp(unit_rgb.g, 0.0, 1.0)),
                       srgb_decode(std::clamp(unit_rgb.b, 0.0, 1.0)));
}

LabColor srgb8_to_lab(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const auto& lut = decode_lut();
  return linear_to_lab(lut[r], lut[g], lut[b]);
}

Rgb lab_to_srgb(LabColor lab) {
  const double fy = (lab.L + 16.0) / 116.0;
  const double fx = fy + lab.a / 500.0;
  const double fz = fy - lab.b / 200.0;
  const double x = lab_f_inv(fx) * kWhiteX;
  const double y = lab_f_inv(fy) * kWhiteY;
  const double z = lab_f_inv(fz) * kWhiteZ;
  const auto& m = xyz_to_rgb();
  const auto channel = [&](std::size_t row) {
    const double lin = m[row][0] * x + m[row][1] * y + m[row][2] * z;
    return std::clamp(srgb_encode(std::max(lin, 0.0)), 0.0, 1.0);
  };
  return {channel(0), channel(1), channel(2)};
}

LchColor lab_to_lch(LabColor lab) {
  const double c = std::hypot(lab.a, lab.b);
  if (lab.a == 0.0 && lab.b == 0.0) return {lab.L, 0.0, 0.0};
  double h = std::atan2(lab.b, lab.a) * 180.0 / std::numbers::pi;
  if (h < 0.0) h += 360.0;
  if (h >= 360.0) h -= 360.0;
  return {lab.L, c, h};
}

LabColor lch_to_lab(LchColor lch) {
  const double rad = lch.h * std::numbers::pi / 180.0;
  return {lch.L, lch.C * std::cos(rad), lch.C * std::sin(rad)};
}

double saturation(LchColor lch) {
  constexpr double kMinLightness = 1e-6;
  return lch.L > kMinLightness ? lch.C / lch.L : 0.0;
}

}  // namespace uwiqa
