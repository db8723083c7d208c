#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>

#include "uwiqa/checker.hpp"
#include "uwiqa/error.hpp"
#include "uwiqa/image.hpp"
#include "uwiqa/report.hpp"

namespace uwiqa {

namespace fs = std::filesystem;

namespace {

bool is_image_file(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

SceneLayout scan_scene(const fs::path& dir) {
  SceneLayout scene;
  scene.name = dir.filename().string();
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::map<std::string, std::vector<fs::path>> by_stem;
  for (const fs::path& f : files) {
    const std::string name = f.filename().string();
    if (name == "annotations.json") {
      scene.annotations = f;
    } else if (name == "reference_chart.json") {
      scene.reference_chart = f;
    } else if (is_image_file(f)) {
      by_stem[f.stem().string()].push_back(f);
    }
  }
  for (auto& [stem, paths] : by_stem) {
    if (stem == kOriginalColumn) {
      scene.original = paths.front();
      continue;
    }
    // Two files sharing a stem keep their full file names as method names.
    for (const fs::path& p : paths) {
      scene.methods.push_back({paths.size() == 1 ? stem : p.filename().string(), p});
    }
  }
  std::sort(scene.methods.begin(), scene.methods.end(),
            [](const MethodImage& a, const MethodImage& b) { return a.name < b.name; });
  return scene;
}

struct SceneContext {
  std::optional<std::vector<PatchAnnotation>> annotations;
  std::string annotation_error;
  std::optional<CheckerReference> reference;
  std::string reference_error;
};

struct ImageResult {
  std::map<Measure, Cell> cells;
  std::optional<std::vector<PatchScore>> patches;
  Cell checker_failure = Cell::unavailable("no annotations for this scene");
};

ImageBuffer load_prepared(const fs::path& path, bool quarter) {
  ImageBuffer img = load_image(path);
  if (quarter) img = resize_bilinear(img, ScaleRatio{1, 4});
  return img;
}

SceneContext prepare_scene(const SceneLayout& scene, const EvaluateOptions& options) {
  SceneContext ctx;
  if (scene.annotations) {
    try {
      auto anns = parse_annotations(*scene.annotations);
      if (options.preprocess_quarter) {
        for (PatchAnnotation& a : anns) {
          for (Point2& p : a.polygon) {
            p.x *= 0.25;
            p.y *= 0.25;
          }
        }
      }
      ctx.annotations = std::move(anns);
    } catch (const std::exception& e) {
      ctx.annotation_error = e.what();
    }
  }
  try {
    if (scene.reference_chart) {
      ctx.reference = load_checker_reference(*scene.reference_chart);
    } else if (options.reference_chart) {
      ctx.reference = load_checker_reference(*options.reference_chart);
    } else {
      ctx.reference = default_checker_reference();
    }
  } catch (const std::exception& e) {
    ctx.reference_error = e.what();
  }
  return ctx;
}

const fs::path* column_path(const SceneLayout& scene, const std::string& column) {
  if (column == kOriginalColumn) return scene.original ? &*scene.original : nullptr;
  for (const MethodImage& m : scene.methods) {
    if (m.name == column) return &m.path;
  }
  return nullptr;
}

ImageResult evaluate_image(const SceneLayout& scene, const SceneContext& ctx,
                           const std::string& column, const EvaluateOptions& options) {
  ImageResult result;
  const bool is_original = column == kOriginalColumn;
  const fs::path* path = column_path(scene, column);

  const auto fill_all = [&](const Cell& cell) {
    for (Measure m : options.measures) {
      if (!is_checker_measure(m)) result.cells[m] = cell;
    }
    result.checker_failure = cell;
  };

  if (path == nullptr) {
    fill_all(is_original ? Cell::error("missing original image")
                         : Cell::unavailable("no image for this method"));
    return result;
  }

  std::optional<ImageBuffer> img;
  try {
    img = load_prepared(*path, options.preprocess_quarter);
  } catch (const std::exception& e) {
    fill_all(Cell::error(e.what()));
    return result;
  }

  std::optional<ImageBuffer> reference;
  std::string reference_failure;
  const bool needs_reference =
      !is_original && std::any_of(options.measures.begin(), options.measures.end(),
                                  [](Measure m) { return is_full_reference(m); });
  if (needs_reference) {
    if (!scene.original) {
      reference_failure = "missing original image";
    } else {
      try {
        reference = load_prepared(*scene.original, options.preprocess_quarter);
      } catch (const std::exception& e) {
        reference_failure = std::string("reference: ") + e.what();
      }
    }
  }

  for (Measure m : options.measures) {
    if (is_checker_measure(m)) continue;
    if (is_full_reference(m)) {
      if (is_original) {
        result.cells[m] = Cell::unavailable("original is the reference image");
        continue;
      }
      if (!reference) {
        result.cells[m] = Cell::error(reference_failure);
        continue;
      }
    }
    try {
      result.cells[m] = Cell::ok(
          measure_image(m, *img, options.config, reference ? &*reference : nullptr));
    } catch (const std::exception& e) {
      result.cells[m] = Cell::error(e.what());
    }
  }

  const bool wants_checker = std::any_of(options.measures.begin(), options.measures.end(),
                                         [](Measure m) { return is_checker_measure(m); });
  if (wants_checker) {
    if (!ctx.annotation_error.empty()) {
      result.checker_failure = Cell::error(ctx.annotation_error);
    } else if (!ctx.reference) {
      result.checker_failure = Cell::error(ctx.reference_error);
    } else if (ctx.annotations) {
      try {
        result.patches = evaluate_checker(*img, *ctx.annotations, *ctx.reference,
                                          options.config.checker);
      } catch (const std::exception& e) {
        result.checker_failure = Cell::error(e.what());
      }
    }
  }
  return result;
}

Cell checker_cell(const ImageResult& r, Measure m, const std::string& label) {
  if (!r.patches) return r.checker_failure;
  for (const PatchScore& s : *r.patches) {
    if (s.label != label) continue;
    if (m == Measure::kDeltaE00) return Cell::ok(s.delta_e00);
    if (s.phi_degrees) return Cell::ok(*s.phi_degrees);
    return Cell::unavailable("phi is reported for achromatic patches only");
  }
  return Cell::unavailable("patch not scored");
}

}  // namespace

DatasetLayout discover_layout(const fs::path& root) {
  if (!fs::is_directory(root)) {
    throw Error(ErrorKind::kIo, root.string() + ": not a directory");
  }
  DatasetLayout layout;
  layout.root = root;
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  for (const fs::path& d : dirs) layout.scenes.push_back(scan_scene(d));
  return layout;
}

ComparisonReport evaluate_batch(const DatasetLayout& layout, const EvaluateOptions& options) {
  ComparisonReport report;
  report.provenance.constants_version = options.config.constants.version;
  report.provenance.config_hash = config_hash(options.config);
  report.provenance.preprocess_quarter = options.preprocess_quarter;
  report.provenance.measures = options.measures;

  std::set<std::string> method_names;
  for (const SceneLayout& s : layout.scenes) {
    for (const MethodImage& m : s.methods) method_names.insert(m.name);
  }
  report.columns.emplace_back(kOriginalColumn);
  report.columns.insert(report.columns.end(), method_names.begin(), method_names.end());

  std::vector<SceneContext> contexts;
  contexts.reserve(layout.scenes.size());
  for (const SceneLayout& s : layout.scenes) contexts.push_back(prepare_scene(s, options));

  const std::size_t n_cols = report.columns.size();
  const std::size_t n_tasks = layout.scenes.size() * n_cols;
  std::vector<ImageResult> results(n_tasks);

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t t = next++; t < n_tasks; t = next++) {
      const std::size_t s = t / n_cols;
      const std::size_t c = t % n_cols;
      try {
        results[t] = evaluate_image(layout.scenes[s], contexts[s], report.columns[c], options);
      } catch (const std::exception& e) {
        ImageResult failed;
        for (Measure m : options.measures) failed.cells[m] = Cell::error(e.what());
        failed.checker_failure = Cell::error(e.what());
        results[t] = std::move(failed);
      }
    }
  };
  unsigned threads = options.jobs != 0 ? options.jobs : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(n_tasks, 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  for (std::size_t s = 0; s < layout.scenes.size(); ++s) {
    const SceneLayout& scene = layout.scenes[s];
    const SceneContext& ctx = contexts[s];
    const auto result_at = [&](std::size_t c) -> const ImageResult& {
      return results[s * n_cols + c];
    };
    for (Measure m : options.measures) {
      if (!is_checker_measure(m)) {
        ReportRow row{scene.name, m, {}, {}};
        for (std::size_t c = 0; c < n_cols; ++c) row.cells.push_back(result_at(c).cells.at(m));
        report.rows.push_back(std::move(row));
        continue;
      }
      if (!ctx.annotations || !ctx.reference) {
        ReportRow row{scene.name, m, {}, {}};
        for (std::size_t c = 0; c < n_cols; ++c) row.cells.push_back(result_at(c).checker_failure);
        report.rows.push_back(std::move(row));
        continue;
      }
      for (const PatchAnnotation& ann : *ctx.annotations) {
        if (m == Measure::kPhi && !options.config.checker.phi_all_patches) {
          const ReferencePatch* ref = ctx.reference->find(ann.label);
          if (ref != nullptr && !ref->achromatic) continue;
        }
        ReportRow row{scene.name, m, ann.label, {}};
        for (std::size_t c = 0; c < n_cols; ++c) {
          row.cells.push_back(checker_cell(result_at(c), m, ann.label));
        }
        report.rows.push_back(std::move(row));
      }
    }
  }
  apply_flags(report);
  return report;
}

}  // namespace uwiqa
