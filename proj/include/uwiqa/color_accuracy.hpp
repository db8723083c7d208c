#pragma once

#include "uwiqa/colorspace.hpp"

namespace uwiqa {

/// Parametric weighing factors; all must be positive.
struct Ciede2000Params {
  double kL = 1.0;
  double kC = 1.0;
  double kH = 1.0;
};

/// Terms of a CIEDE2000 evaluation. `dR` is the already-multiplied rotation
/// contribution RT * (dC / kC SC) * (dH / kH SH), so
/// value = sqrt((dL/kL SL)^2 + (dC/kC SC)^2 + (dH/kH SH)^2 + dR).
struct Ciede2000Breakdown {
  double dL = 0.0;
  double dC = 0.0;
  double dH = 0.0;
  double SL = 1.0;
  double SC = 1.0;
  double SH = 1.0;
  double dR = 0.0;
  double value = 0.0;
};

/// Values at or below this are reported as imperceptible.
inline constexpr double kImperceptibleDeltaE = 1.0;

/// Full CIEDE2000 colour difference (G-compensated a', hue-difference
/// geometry for zero-chroma and >180 degree cases, SL/SC/SH, RT).
/// Throws kInvalidArgument for non-positive weighing factors.
Ciede2000Breakdown ciede2000(const LabColor& ref, const LabColor& test,
                             const Ciede2000Params& params = {});

struct AngularError {
  double degrees = 0.0;
};

/// Angle between an RGB vector and the achromatic diagonal. Scale-free, so
/// any normalization of the input gives the same result.
/// Throws kUndefinedAngle for the zero vector and kInvalidArgument for
/// negative components.
AngularError reproduction_angular_error(const Rgb& patch);

enum class ColorSpaceTag { kRgb, kLab };

/// L2 norm of the component difference within one colour space.
double euclidean_distance(const Triple& a, const Triple& b, ColorSpaceTag space);

}  // namespace uwiqa
