#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uwiqa/config.hpp"
#include "uwiqa/image.hpp"

namespace uwiqa {

enum class Measure {
  kUciqe,
  kUiqm,
  kCcf,
  kDeltaE00,
  kPhi,
  kMse,
  kPsnr,
  kSsim,
  kQu,
  kEntropy,
  kEdges,
};

enum class Polarity { kHigherIsBetter, kLowerIsBetter };

std::string_view measure_name(Measure m);
std::optional<Measure> parse_measure(std::string_view name);
/// Comma-separated list; throws kInvalidArgument on unknown names.
std::vector<Measure> parse_measure_list(std::string_view csv);
std::vector<Measure> all_measures();

/// Errors (phi, de2000, mse) are lower-is-better; everything else higher.
Polarity polarity(Measure m);
bool is_full_reference(Measure m);
bool is_checker_measure(Measure m);
/// Decimal places used by the markdown renderer.
int display_decimals(Measure m);

// ---------------------------------------------------------------------------
// Dataset layout
//
//   <root>/<scene>/original.{png,jpg,jpeg}
//   <root>/<scene>/<method>.{png,jpg,jpeg}   one per enhancement method
//   <root>/<scene>/annotations.json           optional polygon annotations
//   <root>/<scene>/reference_chart.json       optional reference chart
// ---------------------------------------------------------------------------

struct MethodImage {
  std::string name;
  std::filesystem::path path;
};

struct SceneLayout {
  std::string name;
  std::optional<std::filesystem::path> original;
  std::vector<MethodImage> methods;  // sorted by name
  std::optional<std::filesystem::path> annotations;
  std::optional<std::filesystem::path> reference_chart;
};

struct DatasetLayout {
  std::filesystem::path root;
  std::vector<SceneLayout> scenes;  // sorted by name
};

/// Scans `root` for scene directories. Throws kIo if root is not a directory.
DatasetLayout discover_layout(const std::filesystem::path& root);

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

enum class CellStatus { kOk, kUnavailable, kError };

struct Cell {
  CellStatus status = CellStatus::kUnavailable;
  double value = 0.0;
  std::string note;
  bool best_in_row = false;
  bool worse_than_original = false;

  static Cell ok(double v) { return {CellStatus::kOk, v, {}, false, false}; }
  static Cell unavailable(std::string why) {
    return {CellStatus::kUnavailable, 0.0, std::move(why), false, false};
  }
  static Cell error(std::string why) {
    return {CellStatus::kError, 0.0, std::move(why), false, false};
  }

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// One (scene, measure, item) row. `item` is the patch label for checker
/// measures and empty otherwise. `cells[0]` is the original image.
struct ReportRow {
  std::string scene;
  Measure measure = Measure::kUciqe;
  std::string item;
  std::vector<Cell> cells;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct Provenance {
  std::string constants_version;
  std::string config_hash;
  bool preprocess_quarter = false;
  std::vector<Measure> measures;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

inline constexpr std::string_view kOriginalColumn = "original";

struct ComparisonReport {
  std::vector<std::string> columns;  // columns[0] == "original"
  std::vector<ReportRow> rows;
  Provenance provenance;

  bool has_errors() const;
  friend bool operator==(const ComparisonReport&, const ComparisonReport&) = default;
};

/// Recomputes best_in_row and worse_than_original for every row. Best is
/// taken over method columns only (ties all flagged); worse compares a
/// method cell with the original cell under the measure's polarity.
void apply_flags(ComparisonReport& report);

struct EvaluateOptions {
  std::vector<Measure> measures;
  Config config;
  bool preprocess_quarter = false;
  /// Chart used when a scene has no reference_chart.json of its own.
  std::optional<std::filesystem::path> reference_chart;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned jobs = 0;
};

/// Evaluates every (scene, image, measure) cell. Failures are recorded in the
/// affected cells only; the batch always completes.
ComparisonReport evaluate_batch(const DatasetLayout& layout, const EvaluateOptions& options);

enum class ReportFormat { kMarkdown, kCsv, kJson };
std::optional<ReportFormat> parse_report_format(std::string_view name);

std::string render_report(const ComparisonReport& report, ReportFormat format);

/// Lossless JSON form (infinite values are written as the string "inf").
std::string report_to_json(const ComparisonReport& report);
ComparisonReport report_from_json(std::string_view text);

/// Single-image scalar used by the `measure` command and batch cells.
/// Full-reference measures need `reference`.
double measure_image(Measure m, const ImageBuffer& img, const Config& config,
                     const ImageBuffer* reference = nullptr);

}  // namespace uwiqa
