#include "uwiqa/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "uwiqa/error.hpp"

namespace uwiqa {

using nlohmann::json;

NLOHMANN_JSON_SERIALIZE_ENUM(UciqeLuminance, {
                                                 {UciqeLuminance::kLabL, "lab_l"},
                                                 {UciqeLuminance::kLuma8, "luma8"},
                                             })
NLOHMANN_JSON_SERIALIZE_ENUM(PhiMode, {
                                          {PhiMode::kMeanColor, "mean_color"},
                                          {PhiMode::kPerPixel, "per_pixel"},
                                      })
NLOHMANN_JSON_SERIALIZE_ENUM(PatchStatistic, {
                                                 {PatchStatistic::kMean, "mean"},
                                                 {PatchStatistic::kMedian, "median"},
                                             })

namespace {

template <typename T>
void read_opt(const json& j, const char* key, T& field) {
  if (j.contains(key)) j.at(key).get_to(field);
}

}  // namespace

void to_json(json& j, const Config& c) {
  const MeasureConstants& k = c.constants;
  j = json{
      {"constants",
       {{"version", k.version},
        {"uciqe_weights", k.uciqe_weights},
        {"uciqe_chroma_scale", k.uciqe_chroma_scale},
        {"uciqe_extreme_fraction", k.uciqe_extreme_fraction},
        {"uciqe_luminance", k.uciqe_luminance},
        {"uiqm_weights", k.uiqm_weights},
        {"uicm_coeffs", k.uicm_coeffs},
        {"uicm_trim_alpha", k.uicm_trim_alpha},
        {"block_size", k.block_size},
        {"uiconm_plip", k.uiconm_plip},
        {"plip_gamma", k.plip_gamma},
        {"ccf_weights", k.ccf_weights},
        {"ccf_gradient_scale", k.ccf_gradient_scale}}},
      {"ssim",
       {{"window", c.ssim.window},
        {"sigma", c.ssim.sigma},
        {"k1", c.ssim.k1},
        {"k2", c.ssim.k2},
        {"dynamic_range", c.ssim.dynamic_range}}},
      {"edge_threshold", c.edge_threshold},
      {"checker",
       {{"erosion", c.checker.erosion},
        {"statistic", c.checker.statistic},
        {"phi_mode", c.checker.phi_mode},
        {"phi_all_patches", c.checker.phi_all_patches}}},
  };
}

void from_json(const json& j, Config& c) {
  if (!j.is_object()) {
    throw Error(ErrorKind::kConfig, "config root must be a JSON object");
  }
  if (j.contains("constants")) {
    const json& k = j.at("constants");
    MeasureConstants& m = c.constants;
    read_opt(k, "version", m.version);
    read_opt(k, "uciqe_weights", m.uciqe_weights);
    read_opt(k, "uciqe_chroma_scale", m.uciqe_chroma_scale);
    read_opt(k, "uciqe_extreme_fraction", m.uciqe_extreme_fraction);
    read_opt(k, "uciqe_luminance", m.uciqe_luminance);
    read_opt(k, "uiqm_weights", m.uiqm_weights);
    read_opt(k, "uicm_coeffs", m.uicm_coeffs);
    read_opt(k, "uicm_trim_alpha", m.uicm_trim_alpha);
    read_opt(k, "block_size", m.block_size);
    read_opt(k, "uiconm_plip", m.uiconm_plip);
    read_opt(k, "plip_gamma", m.plip_gamma);
    read_opt(k, "ccf_weights", m.ccf_weights);
    read_opt(k, "ccf_gradient_scale", m.ccf_gradient_scale);
  }
  if (j.contains("ssim")) {
    const json& s = j.at("ssim");
    read_opt(s, "window", c.ssim.window);
    read_opt(s, "sigma", c.ssim.sigma);
    read_opt(s, "k1", c.ssim.k1);
    read_opt(s, "k2", c.ssim.k2);
    read_opt(s, "dynamic_range", c.ssim.dynamic_range);
  }
  read_opt(j, "edge_threshold", c.edge_threshold);
  if (j.contains("checker")) {
    const json& k = j.at("checker");
    read_opt(k, "erosion", c.checker.erosion);
    read_opt(k, "statistic", c.checker.statistic);
    read_opt(k, "phi_mode", c.checker.phi_mode);
    read_opt(k, "phi_all_patches", c.checker.phi_all_patches);
  }

  if (c.ssim.window < 3 || c.ssim.window % 2 == 0) {
    throw Error(ErrorKind::kConfig, "ssim.window must be odd and >= 3");
  }
  if (!(c.ssim.k1 > 0.0 && c.ssim.k2 > 0.0)) {
    throw Error(ErrorKind::kConfig, "ssim.k1 and ssim.k2 must be positive");
  }
  if (c.constants.block_size < 1) {
    throw Error(ErrorKind::kConfig, "constants.block_size must be positive");
  }
  if (!(c.constants.uicm_trim_alpha >= 0.0 && c.constants.uicm_trim_alpha < 0.5)) {
    throw Error(ErrorKind::kConfig, "constants.uicm_trim_alpha must be in [0,0.5)");
  }
  if (c.checker.erosion < 0.0) {
    throw Error(ErrorKind::kConfig, "checker.erosion must be non-negative");
  }
}

Config parse_config(const std::string& text) {
  try {
    return json::parse(text).get<Config>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("invalid config: ") + e.what());
  }
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, path.string() + ": cannot open config");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::string canonical_config(const Config& config) {
  // nlohmann::json objects keep keys sorted, so dump() is canonical.
  return json(config).dump();
}

std::string config_hash(const Config& config) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : canonical_config(config)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace uwiqa
