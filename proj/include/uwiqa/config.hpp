#pragma once

#include <array>
#include <filesystem>
#include <limits>
#include <string>

#include <json.hpp>

namespace uwiqa {

enum class UciqeLuminance { kLabL, kLuma8 };

/// Weights and constants of the no-reference measures. This record is the
/// single home of these numbers; everything else reads them from here.
struct MeasureConstants {
  std::string version = "uwiqa-constants/1";

  // UCIQE: chroma std-dev, luminance-extremes contrast, mean saturation.
  std::array<double, 3> uciqe_weights{0.4680, 0.2745, 0.2576};
  // Chroma is expressed in hundredths of Lab units before taking the std-dev.
  double uciqe_chroma_scale = 0.01;
  double uciqe_extreme_fraction = 0.01;
  UciqeLuminance uciqe_luminance = UciqeLuminance::kLabL;

  // UIQM: colourfulness, sharpness, contrast.
  std::array<double, 3> uiqm_weights{0.0282, 0.2953, 3.5753};
  // UICM = c0 * |mean opponent| + c1 * sqrt(opponent variance).
  std::array<double, 2> uicm_coeffs{-0.0268, 0.1586};
  double uicm_trim_alpha = 0.1;
  int block_size = 8;
  bool uiconm_plip = false;
  double plip_gamma = 1026.0;

  // CCF: colourfulness, contrast, fog density.
  std::array<double, 3> ccf_weights{0.17593, 0.61759, 0.33988};
  // Multiplier from raw Sobel magnitude to the CCF contrast index.
  double ccf_gradient_scale = 0.25;
};

struct SsimParams {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 255.0;
};

enum class PhiMode { kMeanColor, kPerPixel };
enum class PatchStatistic { kMean, kMedian };

struct CheckerOptions {
  double erosion = 2.0;
  PatchStatistic statistic = PatchStatistic::kMean;
  PhiMode phi_mode = PhiMode::kMeanColor;
  bool phi_all_patches = false;
};

/// Everything a run can tune. Immutable once the run starts.
struct Config {
  MeasureConstants constants;
  SsimParams ssim;
  // Sobel magnitude threshold, 8-bit scale.
  double edge_threshold = 25.0;
  CheckerOptions checker;
};

void to_json(nlohmann::json& j, const Config& config);
void from_json(const nlohmann::json& j, Config& config);

/// Reads a JSON config; absent keys keep their defaults.
Config load_config(const std::filesystem::path& path);
Config parse_config(const std::string& text);

/// Canonical JSON dump of the config (sorted keys, no whitespace).
std::string canonical_config(const Config& config);

/// FNV-1a 64-bit hash of `canonical_config`, as 16 hex digits.
std::string config_hash(const Config& config);

}  // namespace uwiqa
