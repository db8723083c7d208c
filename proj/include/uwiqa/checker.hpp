#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uwiqa/colorspace.hpp"
#include "uwiqa/config.hpp"
#include "uwiqa/image.hpp"

namespace uwiqa {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Labelled polygon in image coordinates. Pixel (i, j) covers
/// [i, i+1) x [j, j+1); its centre (i+0.5, j+0.5) decides membership.
struct PatchAnnotation {
  std::string label;
  std::vector<Point2> polygon;
};

/// Reads the "shapes" array of a LabelMe-style JSON export. Each shape needs
/// a string "label" and "points" as [x, y] pairs (at least three).
/// Throws kMalformedAnnotation or kDuplicateLabel.
std::vector<PatchAnnotation> parse_annotations(const std::filesystem::path& path);
std::vector<PatchAnnotation> parse_annotations_text(std::string_view text,
                                                    std::string_view source = "<memory>");

struct ReferencePatch {
  std::string label;
  Rgb srgb8;  // 8-bit scale
  bool achromatic = false;
};

/// 24-patch reference chart under D65 with exactly six achromatic entries.
class CheckerReference {
 public:
  /// Throws kConfig if the patch set violates the 24/6 layout or repeats a label.
  explicit CheckerReference(std::vector<ReferencePatch> patches);

  const std::vector<ReferencePatch>& patches() const noexcept { return patches_; }
  const ReferencePatch* find(std::string_view label) const;

 private:
  std::vector<ReferencePatch> patches_;
};

/// The classic 24-patch chart in published sRGB (D65). The six neutral
/// patches are stored exactly on the gray axis.
const CheckerReference& default_checker_reference();

/// JSON array of {label, srgb: [r, g, b], achromatic}.
CheckerReference load_checker_reference(const std::filesystem::path& path);
CheckerReference parse_checker_reference_text(std::string_view text,
                                              std::string_view source = "<memory>");
std::string checker_reference_to_json(const CheckerReference& reference);

/// Image pixels whose centres lie inside `polygon` (even-odd rule) and at
/// least `erosion` pixels away from every edge.
std::vector<std::size_t> polygon_interior(const ImageBuffer& img,
                                          const PatchAnnotation& patch,
                                          double erosion);

/// Mean (or per-channel median) colour of the eroded interior, 8-bit scale.
/// Throws kEmptyInterior when no pixel survives the erosion and
/// kInvalidArgument for vertices outside the image.
Rgb patch_mean_color(const ImageBuffer& img, const PatchAnnotation& patch,
                     double erosion,
                     PatchStatistic statistic = PatchStatistic::kMean);

struct PatchScore {
  std::string label;
  bool achromatic = false;
  Rgb measured_rgb;  // 8-bit scale
  std::optional<double> phi_degrees;
  double delta_e00 = 0.0;
  bool phi_worse_than_original = false;
  bool delta_e_worse_than_original = false;

  bool worse_than_original() const noexcept {
    return phi_worse_than_original || delta_e_worse_than_original;
  }
};

/// Scores every annotated patch against the reference chart. Phi is
/// reported for achromatic patches (all patches with
/// `options.phi_all_patches`). When `original` is given, a patch is flagged
/// worse when its error exceeds the original image's error for that patch.
/// Throws kUnmatchedLabel for annotation labels missing from the chart.
std::vector<PatchScore> evaluate_checker(
    const ImageBuffer& img, std::span<const PatchAnnotation> annotations,
    const CheckerReference& reference, const CheckerOptions& options = {},
    std::optional<std::span<const PatchScore>> original = std::nullopt);

}  // namespace uwiqa
