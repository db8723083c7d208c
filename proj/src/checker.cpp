#include "uwiqa/checker.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "uwiqa/color_accuracy.hpp"
#include "uwiqa/error.hpp"

namespace uwiqa {

using nlohmann::json;

namespace {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

[[noreturn]] void malformed(std::string_view source, const std::string& what) {
  throw Error(ErrorKind::kMalformedAnnotation, std::string(source) + ": " + what);
}

double distance_to_segment(Point2 p, Point2 a, Point2 b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) {
    t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  }
  const double cx = a.x + t * dx - p.x;
  const double cy = a.y + t * dy - p.y;
  return std::sqrt(cx * cx + cy * cy);
}

bool inside_even_odd(Point2 p, const std::vector<Point2>& poly) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2& a = poly[i];
    const Point2& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

double median_of(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

Rgb unit(const Rgb& rgb8) { return {rgb8.r / 255.0, rgb8.g / 255.0, rgb8.b / 255.0}; }

}  // namespace

std::vector<PatchAnnotation> parse_annotations_text(std::string_view text,
                                                    std::string_view source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(source, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("shapes") || !doc["shapes"].is_array()) {
    malformed(source, "expected an object with a \"shapes\" array");
  }

  std::vector<PatchAnnotation> out;
  std::set<std::string> seen;
  for (const json& shape : doc["shapes"]) {
    if (!shape.is_object() || !shape.contains("label") || !shape["label"].is_string()) {
      malformed(source, "shape without a string \"label\"");
    }
    PatchAnnotation ann;
    ann.label = shape["label"].get<std::string>();
    if (!shape.contains("points") || !shape["points"].is_array()) {
      malformed(source, "shape '" + ann.label + "' has no \"points\" array");
    }
    for (const json& pt : shape["points"]) {
      if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number()) {
        malformed(source, "shape '" + ann.label + "' has a point that is not [x, y]");
      }
      ann.polygon.push_back({pt[0].get<double>(), pt[1].get<double>()});
    }
    if (ann.polygon.size() < 3) {
      malformed(source, "shape '" + ann.label + "' has fewer than 3 points");
    }
    if (!seen.insert(ann.label).second) {
      throw Error(ErrorKind::kDuplicateLabel,
                  std::string(source) + ": duplicate label '" + ann.label + "'");
    }
    out.push_back(std::move(ann));
  }
  return out;
}

std::vector<PatchAnnotation> parse_annotations(const std::filesystem::path& path) {
  return parse_annotations_text(read_text(path), path.string());
}

CheckerReference::CheckerReference(std::vector<ReferencePatch> patches)
    : patches_(std::move(patches)) {
  constexpr std::size_t kPatchCount = 24;
  constexpr std::size_t kAchromaticCount = 6;
  if (patches_.size() != kPatchCount) {
    throw Error(ErrorKind::kConfig, "reference chart must have 24 patches, got " +
                                        std::to_string(patches_.size()));
  }
  const auto achromatic = static_cast<std::size_t>(std::count_if(
      patches_.begin(), patches_.end(), [](const ReferencePatch& p) { return p.achromatic; }));
  if (achromatic != kAchromaticCount) {
    throw Error(ErrorKind::kConfig, "reference chart must flag 6 achromatic patches, got " +
                                        std::to_string(achromatic));
  }
  std::set<std::string> seen;
  for (const ReferencePatch& p : patches_) {
    if (!seen.insert(p.label).second) {
      throw Error(ErrorKind::kConfig, "duplicate reference label '" + p.label + "'");
    }
  }
}

const ReferencePatch* CheckerReference::find(std::string_view label) const {
  const auto it = std::find_if(patches_.begin(), patches_.end(),
                               [&](const ReferencePatch& p) { return p.label == label; });
  return it == patches_.end() ? nullptr : &*it;
}

const CheckerReference& default_checker_reference() {
  static const CheckerReference chart({
      {"dark_skin", {115, 82, 68}, false},
      {"light_skin", {194, 150, 130}, false},
      {"blue_sky", {98, 122, 157}, false},
      {"foliage", {87, 108, 67}, false},
      {"blue_flower", {133, 128, 177}, false},
      {"bluish_green", {103, 189, 170}, false},
      {"orange", {214, 126, 44}, false},
      {"purplish_blue", {80, 91, 166}, false},
      {"moderate_red", {193, 90, 99}, false},
      {"purple", {94, 60, 108}, false},
      {"yellow_green", {157, 188, 64}, false},
      {"orange_yellow", {224, 163, 46}, false},
      {"blue", {56, 61, 150}, false},
      {"green", {70, 148, 73}, false},
      {"red", {175, 54, 60}, false},
      {"yellow", {231, 199, 31}, false},
      {"magenta", {187, 86, 149}, false},
      {"cyan", {8, 133, 161}, false},
      {"white", {243, 243, 243}, true},
      {"neutral_8", {200, 200, 200}, true},
      {"neutral_6_5", {160, 160, 160}, true},
      {"neutral_5", {122, 122, 122}, true},
      {"neutral_3_5", {85, 85, 85}, true},
      {"black", {52, 52, 52}, true},
  });
  return chart;
}

CheckerReference parse_checker_reference_text(std::string_view text, std::string_view source) {
  std::vector<ReferencePatch> patches;
  try {
    const json doc = json::parse(text);
    if (!doc.is_array()) {
      throw Error(ErrorKind::kConfig, std::string(source) + ": expected a JSON array");
    }
    for (const json& entry : doc) {
      const auto rgb = entry.at("srgb").get<std::vector<double>>();
      if (rgb.size() != 3) {
        throw Error(ErrorKind::kConfig, std::string(source) + ": srgb needs 3 components");
      }
      patches.push_back({entry.at("label").get<std::string>(),
                         {rgb[0], rgb[1], rgb[2]},
                         entry.at("achromatic").get<bool>()});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string(source) + ": " + e.what());
  }
  try {
    return CheckerReference(std::move(patches));
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(source) + ": " + e.what());
  }
}

CheckerReference load_checker_reference(const std::filesystem::path& path) {
  return parse_checker_reference_text(read_text(path), path.string());
}

std::string checker_reference_to_json(const CheckerReference& reference) {
  json doc = json::array();
  for (const ReferencePatch& p : reference.patches()) {
    doc.push_back({{"label", p.label},
                   {"srgb", {p.srgb8.r, p.srgb8.g, p.srgb8.b}},
                   {"achromatic", p.achromatic}});
  }
  return doc.dump(2);
}

std::vector<std::size_t> polygon_interior(const ImageBuffer& img,
                                          const PatchAnnotation& patch, double erosion) {
  double min_x = patch.polygon.front().x;
  double max_x = min_x;
  double min_y = patch.polygon.front().y;
  double max_y = min_y;
  for (const Point2& p : patch.polygon) {
    if (p.x < 0.0 || p.y < 0.0 || p.x > img.width() || p.y > img.height()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "patch '" + patch.label + "' has a vertex outside the image");
    }
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }

  std::vector<std::size_t> pixels;
  const int x0 = std::max(0, static_cast<int>(std::floor(min_x)));
  const int x1 = std::min(img.width() - 1, static_cast<int>(std::ceil(max_x)));
  const int y0 = std::max(0, static_cast<int>(std::floor(min_y)));
  const int y1 = std::min(img.height() - 1, static_cast<int>(std::ceil(max_y)));
  const std::size_t n = patch.polygon.size();
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const Point2 centre{x + 0.5, y + 0.5};
      if (!inside_even_odd(centre, patch.polygon)) continue;
      bool clear = true;
      for (std::size_t i = 0, j = n - 1; i < n && clear; j = i++) {
        // Pixels sitting on the boundary are never strictly inside.
        const double d = distance_to_segment(centre, patch.polygon[j], patch.polygon[i]);
        clear = d > erosion && d > 0.0;
      }
      if (clear) {
        pixels.push_back(static_cast<std::size_t>(y) * static_cast<std::size_t>(img.width()) +
                         static_cast<std::size_t>(x));
      }
    }
  }
  return pixels;
}

Rgb patch_mean_color(const ImageBuffer& img, const PatchAnnotation& patch, double erosion,
                     PatchStatistic statistic) {
  if (img.channels() != 3) {
    throw Error(ErrorKind::kInvalidArgument, "patch colours need a 3-channel image");
  }
  const std::vector<std::size_t> pixels = polygon_interior(img, patch, erosion);
  if (pixels.empty()) {
    throw Error(ErrorKind::kEmptyInterior,
                "patch '" + patch.label + "' has no pixels left after " +
                    std::to_string(erosion) + " px erosion");
  }
  const double scale = 255.0 / img.max_value();
  std::array<std::vector<double>, 3> samples;
  for (auto& s : samples) s.reserve(pixels.size());
  for (std::size_t p : pixels) {
    const int x = static_cast<int>(p % static_cast<std::size_t>(img.width()));
    const int y = static_cast<int>(p / static_cast<std::size_t>(img.width()));
    for (int c = 0; c < 3; ++c) {
      samples[static_cast<std::size_t>(c)].push_back(img.at(x, y, c) * scale);
    }
  }
  std::array<double, 3> stat{};
  for (std::size_t c = 0; c < 3; ++c) {
    if (statistic == PatchStatistic::kMedian) {
      stat[c] = median_of(samples[c]);
    } else {
      double acc = 0.0;
      for (double v : samples[c]) acc += v;
      stat[c] = acc / static_cast<double>(samples[c].size());
    }
  }
  return {stat[0], stat[1], stat[2]};
}

std::vector<PatchScore> evaluate_checker(const ImageBuffer& img,
                                         std::span<const PatchAnnotation> annotations,
                                         const CheckerReference& reference,
                                         const CheckerOptions& options,
                                         std::optional<std::span<const PatchScore>> original) {
  std::vector<PatchScore> scores;
  scores.reserve(annotations.size());
  for (const PatchAnnotation& ann : annotations) {
    const ReferencePatch* ref = reference.find(ann.label);
    if (ref == nullptr) {
      throw Error(ErrorKind::kUnmatchedLabel,
                  "annotation label '" + ann.label + "' is not in the reference chart");
    }
    PatchScore score;
    score.label = ann.label;
    score.achromatic = ref->achromatic;
    score.measured_rgb = patch_mean_color(img, ann, options.erosion, options.statistic);

    if (ref->achromatic || options.phi_all_patches) {
      if (options.phi_mode == PhiMode::kMeanColor) {
        score.phi_degrees = reproduction_angular_error(score.measured_rgb).degrees;
      } else {
        const std::vector<std::size_t> pixels = polygon_interior(img, ann, options.erosion);
        double acc = 0.0;
        std::size_t used = 0;
        for (std::size_t p : pixels) {
          const int x = static_cast<int>(p % static_cast<std::size_t>(img.width()));
          const int y = static_cast<int>(p / static_cast<std::size_t>(img.width()));
          const Rgb px{img.unit_at(x, y, 0), img.unit_at(x, y, 1), img.unit_at(x, y, 2)};
          if (px.r + px.g + px.b == 0.0) continue;
          acc += reproduction_angular_error(px).degrees;
          ++used;
        }
        if (used == 0) {
          throw Error(ErrorKind::kUndefinedAngle,
                      "patch '" + ann.label + "' contains only black pixels");
        }
        score.phi_degrees = acc / static_cast<double>(used);
      }
    }
    score.delta_e00 =
        ciede2000(srgb_to_lab(unit(ref->srgb8)), srgb_to_lab(unit(score.measured_rgb))).value;

    if (original) {
      const auto it = std::find_if(original->begin(), original->end(),
                                   [&](const PatchScore& s) { return s.label == ann.label; });
      if (it != original->end()) {
        score.delta_e_worse_than_original = score.delta_e00 > it->delta_e00;
        if (score.phi_degrees && it->phi_degrees) {
          score.phi_worse_than_original = *score.phi_degrees > *it->phi_degrees;
        }
      }
    }
    scores.push_back(std::move(score));
  }
  return scores;
}

}  // namespace uwiqa
