#pragma once

#include <cstdint>

namespace uwiqa {

/// Plain colour triple. Units depend on context: 8-bit scale, unit
/// interval, or Lab coordinates.
struct Triple {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Triple&, const Triple&) = default;
};

/// sRGB triple; components in [0,1] unless stated otherwise.
struct Rgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// CIELab under the D65 2-degree white.
struct LabColor {
  double L = 0.0;
  double a = 0.0;
  double b = 0.0;
};

/// Cylindrical Lab; hue in degrees, [0,360).
struct LchColor {
  double L = 0.0;
  double C = 0.0;
  double h = 0.0;
};

/// sRGB in [0,1] -> Lab (D65). Out-of-range components are clamped.
LabColor srgb_to_lab(Rgb unit_rgb);
LabColor srgb8_to_lab(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// Inverse of srgb_to_lab; the result is clipped to [0,1].
Rgb lab_to_srgb(LabColor lab);

LchColor lab_to_lch(LabColor lab);
LabColor lch_to_lab(LchColor lch);

/// C / L, or 0 when L <= 1e-6.
double saturation(LchColor lch);

}  // namespace uwiqa
