// uwiqa: command-line driver for the colour-accuracy and image-quality measures.
//
//   uwiqa evaluate --root <dir> --measures uciqe,uiqm,ccf --format markdown --out report.md
//   uwiqa measure  --image <file> --measure uiqm
//   uwiqa checker  --image <file> --annotations <file>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "uwiqa/checker.hpp"
#include "uwiqa/color_accuracy.hpp"
#include "uwiqa/config.hpp"
#include "uwiqa/error.hpp"
#include "uwiqa/generic_iqa.hpp"
#include "uwiqa/image.hpp"
#include "uwiqa/nr_metrics.hpp"
#include "uwiqa/report.hpp"

namespace {

using nlohmann::json;

constexpr int kExitCellErrors = 1;
constexpr int kExitFailure = 2;

uwiqa::Config config_from(const std::string& path) {
  return path.empty() ? uwiqa::Config{} : uwiqa::load_config(path);
}

uwiqa::ImageBuffer load(const std::string& path, bool quarter) {
  uwiqa::ImageBuffer img = uwiqa::load_image(path);
  if (quarter) img = uwiqa::resize_bilinear(img, uwiqa::ScaleRatio{1, 4});
  return img;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw uwiqa::Error(uwiqa::ErrorKind::kIo, out_path + ": cannot open for writing");
  out << text;
}

json json_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json measure_json(uwiqa::Measure m, const uwiqa::ImageBuffer& img, const uwiqa::Config& config,
                  const uwiqa::ImageBuffer* reference) {
  using uwiqa::Measure;
  json j = {{"measure", std::string(uwiqa::measure_name(m))}};
  switch (m) {
    case Measure::kUciqe: {
      const auto b = uwiqa::uciqe(img, config.constants);
      j["value"] = b.value;
      j["components"] = {{"sigma_c", b.sigma_c}, {"con_l", b.con_l}, {"mu_s", b.mu_s}};
      return j;
    }
    case Measure::kUiqm: {
      const auto b = uwiqa::uiqm(img, config.constants);
      j["value"] = b.value;
      j["components"] = {{"uicm", b.uicm}, {"uism", b.uism}, {"uiconm", b.uiconm}};
      return j;
    }
    case Measure::kCcf: {
      const auto b = uwiqa::ccf(img, config.constants, config.edge_threshold);
      j["value"] = b.value;
      j["components"] = {{"colorfulness", b.colorfulness},
                         {"contrast", b.contrast},
                         {"fog_density", b.fog_density}};
      j["note"] = "component formulas are reconstructions";
      return j;
    }
    case Measure::kQu: {
      if (reference == nullptr) break;
      const auto b = uwiqa::qu(*reference, img, config.ssim);
      j["value"] = b.value;
      j["components"] = {{"ssim", b.ssim}, {"mean_delta_e00", b.mean_delta_e00}};
      j["note"] = "delta-E term normalized by 100";
      return j;
    }
    case Measure::kEdges: {
      const auto e = uwiqa::visible_edge_count(img, config.edge_threshold);
      j["value"] = e.count;
      j["components"] = {{"ratio", e.ratio}};
      return j;
    }
    default:
      break;
  }
  j["value"] = json_number(uwiqa::measure_image(m, img, config, reference));
  return j;
}

std::string checker_markdown(const std::vector<uwiqa::PatchScore>& scores) {
  std::string out = "| Patch | R | G | B | Phi (deg) | CIEDE2000 |\n|---|---:|---:|---:|---:|---:|\n";
  char buf[256];
  for (const auto& s : scores) {
    const std::string phi = s.phi_degrees ? [&] {
      char b[32];
      std::snprintf(b, sizeof b, "%.2f", *s.phi_degrees);
      return std::string(b);
    }()
                                          : std::string("n/a");
    std::snprintf(buf, sizeof buf, "| %s | %.1f | %.1f | %.1f | %s%s | %.2f%s%s |\n",
                  s.label.c_str(), s.measured_rgb.r, s.measured_rgb.g, s.measured_rgb.b,
                  phi.c_str(), s.phi_worse_than_original ? " \xE2\x80\xA0" : "", s.delta_e00,
                  s.delta_e_worse_than_original ? " \xE2\x80\xA0" : "",
                  s.delta_e00 <= uwiqa::kImperceptibleDeltaE ? " (imperceptible)" : "");
    out += buf;
  }
  return out;
}

json checker_json(const std::vector<uwiqa::PatchScore>& scores) {
  json arr = json::array();
  for (const auto& s : scores) {
    arr.push_back(json{{"label", s.label},
                   {"achromatic", s.achromatic},
                   {"measured_rgb", {s.measured_rgb.r, s.measured_rgb.g, s.measured_rgb.b}},
                   {"phi_degrees", s.phi_degrees ? json(*s.phi_degrees) : json()},
                   {"delta_e00", s.delta_e00},
                   {"imperceptible", s.delta_e00 <= uwiqa::kImperceptibleDeltaE},
                   {"phi_worse_than_original", s.phi_worse_than_original},
                   {"delta_e_worse_than_original", s.delta_e_worse_than_original}});
  }
  return arr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Colour-accuracy and image-quality measures for enhanced underwater images"};
  app.require_subcommand(1);

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Score every scene/method image under a dataset root");
  std::string root;
  std::string measures_csv = "uciqe,uiqm,ccf";
  std::string config_path;
  std::string format_name = "markdown";
  std::string out_path;
  bool quarter = false;
  std::string chart_path;
  unsigned jobs = 0;
  evaluate->add_option("--root", root, "Dataset root (one directory per scene)")->required();
  evaluate->add_option("--measures", measures_csv, "Comma-separated measures")->capture_default_str();
  evaluate->add_option("--config", config_path, "JSON config file");
  evaluate->add_option("--format", format_name, "markdown|csv|json")->capture_default_str();
  evaluate->add_option("--out", out_path, "Output file (default: stdout)");
  evaluate->add_flag("--preprocess-quarter", quarter, "Bilinear resize to one quarter before scoring");
  evaluate->add_option("--reference-chart", chart_path, "Reference chart JSON");
  evaluate->add_option("--jobs", jobs, "Worker threads (0 = hardware concurrency)");

  // measure
  auto* measure = app.add_subcommand("measure", "Score a single image");
  std::string image_path;
  std::string measure_name;
  std::string reference_path;
  measure->add_option("--image", image_path, "Image to score")->required();
  measure->add_option("--measure", measure_name, "Measure name")->required();
  measure->add_option("--reference", reference_path, "Reference image for full-reference measures");
  measure->add_option("--config", config_path, "JSON config file");
  measure->add_flag("--preprocess-quarter", quarter, "Bilinear resize to one quarter before scoring");

  // checker
  auto* checker = app.add_subcommand("checker", "Score colour-checker patches against the reference chart");
  std::string annotations_path;
  std::string original_path;
  checker->add_option("--image", image_path, "Image containing the chart")->required();
  checker->add_option("--annotations", annotations_path, "Polygon annotation JSON")->required();
  checker->add_option("--reference-chart", chart_path, "Reference chart JSON");
  checker->add_option("--original", original_path, "Original image, for worse-than-original flags");
  checker->add_option("--config", config_path, "JSON config file");
  checker->add_option("--format", format_name, "markdown|json")->capture_default_str();
  checker->add_option("--out", out_path, "Output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    const uwiqa::Config config = config_from(config_path);

    if (*evaluate) {
      const auto format = uwiqa::parse_report_format(format_name);
      if (!format) {
        std::cerr << "unknown format '" << format_name << "'\n";
        return kExitFailure;
      }
      uwiqa::EvaluateOptions options;
      options.measures = uwiqa::parse_measure_list(measures_csv);
      options.config = config;
      options.preprocess_quarter = quarter;
      if (!chart_path.empty()) options.reference_chart = chart_path;
      options.jobs = jobs;
      const auto report = uwiqa::evaluate_batch(uwiqa::discover_layout(root), options);
      write_output(uwiqa::render_report(report, *format), out_path);
      if (report.has_errors()) {
        std::cerr << "some cells failed; see the report for details\n";
        return kExitCellErrors;
      }
      return 0;
    }

    if (*measure) {
      const auto m = uwiqa::parse_measure(measure_name);
      if (!m) {
        std::cerr << "unknown measure '" << measure_name << "'\n";
        return kExitFailure;
      }
      const uwiqa::ImageBuffer img = load(image_path, quarter);
      std::optional<uwiqa::ImageBuffer> reference;
      if (!reference_path.empty()) reference = load(reference_path, quarter);
      std::cout << measure_json(*m, img, config, reference ? &*reference : nullptr).dump(2) << '\n';
      return 0;
    }

    if (*checker) {
      const uwiqa::ImageBuffer img = uwiqa::load_image(image_path);
      const auto annotations = uwiqa::parse_annotations(annotations_path);
      const uwiqa::CheckerReference chart = chart_path.empty()
                                                ? uwiqa::default_checker_reference()
                                                : uwiqa::load_checker_reference(chart_path);
      std::optional<std::vector<uwiqa::PatchScore>> original;
      if (!original_path.empty()) {
        original = uwiqa::evaluate_checker(uwiqa::load_image(original_path), annotations, chart,
                                           config.checker);
      }
      const auto scores = uwiqa::evaluate_checker(
          img, annotations, chart, config.checker,
          original ? std::optional<std::span<const uwiqa::PatchScore>>(*original) : std::nullopt);
      if (format_name == "json") {
        write_output(checker_json(scores).dump(2) + "\n", out_path);
      } else if (format_name == "markdown" || format_name == "md") {
        write_output(checker_markdown(scores), out_path);
      } else {
        std::cerr << "unknown format '" << format_name << "'\n";
        return kExitFailure;
      }
      return 0;
    }
  } catch (const uwiqa::Error& e) {
    std::cerr << "error (" << uwiqa::to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return 0;
}
