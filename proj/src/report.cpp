#include "uwiqa/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "uwiqa/error.hpp"
#include "uwiqa/generic_iqa.hpp"
#include "uwiqa/nr_metrics.hpp"

namespace uwiqa {

using nlohmann::json;

namespace {

struct MeasureInfo {
  Measure measure;
  std::string_view name;
  std::string_view title;
  Polarity polarity;
  bool full_reference;
  bool checker;
  int decimals;
};

constexpr std::array<MeasureInfo, 11> kMeasures{{
    {Measure::kUciqe, "uciqe", "UCIQE", Polarity::kHigherIsBetter, false, false, 2},
    {Measure::kUiqm, "uiqm", "UIQM", Polarity::kHigherIsBetter, false, false, 2},
    {Measure::kCcf, "ccf", "CCF [reconstructed components]", Polarity::kHigherIsBetter, false, false, 2},
    {Measure::kDeltaE00, "de2000", "CIEDE2000", Polarity::kLowerIsBetter, false, true, 2},
    {Measure::kPhi, "phi", "Reproduction angular error (deg)", Polarity::kLowerIsBetter,
     false, true, 2},
    {Measure::kMse, "mse", "MSE", Polarity::kLowerIsBetter, true, false, 2},
    {Measure::kPsnr, "psnr", "PSNR (dB)", Polarity::kHigherIsBetter, true, false, 2},
    {Measure::kSsim, "ssim", "SSIM", Polarity::kHigherIsBetter, true, false, 4},
    {Measure::kQu, "qu", "Qu [reconstructed normalization]", Polarity::kHigherIsBetter, true, false, 4},
    {Measure::kEntropy, "entropy", "Entropy (bits)", Polarity::kHigherIsBetter, false, false,
     3},
    {Measure::kEdges, "edges", "Visible edges", Polarity::kHigherIsBetter, false, false, 0},
}};

const MeasureInfo& info(Measure m) {
  for (const MeasureInfo& i : kMeasures) {
    if (i.measure == m) return i;
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown measure");
}

std::string format_number(double v, int decimals) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string format_full(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view status_name(CellStatus s) {
  switch (s) {
    case CellStatus::kOk: return "ok";
    case CellStatus::kUnavailable: return "unavailable";
    case CellStatus::kError: return "error";
  }
  return "error";
}

CellStatus parse_status(const std::string& s) {
  if (s == "ok") return CellStatus::kOk;
  if (s == "unavailable") return CellStatus::kUnavailable;
  if (s == "error") return CellStatus::kError;
  throw Error(ErrorKind::kInvalidArgument, "unknown cell status '" + s + "'");
}

bool better(Polarity p, double a, double b) {
  return p == Polarity::kHigherIsBetter ? a > b : a < b;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

json value_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double value_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw Error(ErrorKind::kInvalidArgument, "bad numeric value '" + s + "'");
  }
  return j.get<double>();
}

Measure require_measure(const std::string& name) {
  const auto m = parse_measure(name);
  if (!m) throw Error(ErrorKind::kInvalidArgument, "unknown measure '" + name + "'");
  return *m;
}

std::string render_markdown(const ComparisonReport& report) {
  std::ostringstream out;
  out << "# Comparison report\n\n";
  out << "- constants: " << report.provenance.constants_version << "\n";
  out << "- config hash: " << report.provenance.config_hash << "\n";
  out << "- preprocessing: "
      << (report.provenance.preprocess_quarter ? "quarter-size bilinear resize" : "none")
      << "\n";
  out << "\nBold: best method in the row. Dagger: worse than the original image.\n";

  for (Measure m : report.provenance.measures) {
    const MeasureInfo& mi = info(m);
    std::vector<const ReportRow*> rows;
    for (const ReportRow& r : report.rows) {
      if (r.measure == m) rows.push_back(&r);
    }
    if (rows.empty()) continue;
    out << "\n## " << mi.title << " ("
        << (mi.polarity == Polarity::kHigherIsBetter ? "higher is better" : "lower is better")
        << ")\n\n";
    out << "| Scene |";
    if (mi.checker) out << " Patch |";
    for (const std::string& c : report.columns) out << ' ' << c << " |";
    out << "\n|---|";
    if (mi.checker) out << "---|";
    for (std::size_t i = 0; i < report.columns.size(); ++i) out << "---:|";
    out << '\n';
    for (const ReportRow* r : rows) {
      out << "| " << r->scene << " |";
      if (mi.checker) out << ' ' << r->item << " |";
      for (const Cell& cell : r->cells) {
        out << ' ';
        if (cell.status == CellStatus::kOk) {
          const std::string num = format_number(cell.value, mi.decimals);
          out << (cell.best_in_row ? "**" + num + "**" : num);
          if (cell.worse_than_original) out << " \xE2\x80\xA0";
        } else {
          out << (cell.status == CellStatus::kError ? "error" : "n/a");
        }
        out << " |";
      }
      out << '\n';
    }
  }

  bool any_error = false;
  for (const ReportRow& r : report.rows) {
    for (std::size_t i = 0; i < r.cells.size(); ++i) {
      const Cell& cell = r.cells[i];
      if (cell.status != CellStatus::kError) continue;
      if (!any_error) out << "\n## Errors\n\n";
      any_error = true;
      out << "- " << r.scene << " / " << measure_name(r.measure);
      if (!r.item.empty()) out << " / " << r.item;
      out << " / " << (i < report.columns.size() ? report.columns[i] : "?") << ": "
          << cell.note << '\n';
    }
  }
  return out.str();
}

std::string render_csv(const ComparisonReport& report) {
  std::ostringstream out;
  out << "scene,measure,item,method,status,value,best_in_row,worse_than_original,note\n";
  for (const ReportRow& r : report.rows) {
    for (std::size_t i = 0; i < r.cells.size(); ++i) {
      const Cell& c = r.cells[i];
      out << csv_field(r.scene) << ',' << measure_name(r.measure) << ',' << csv_field(r.item)
          << ',' << csv_field(i < report.columns.size() ? report.columns[i] : "") << ','
          << status_name(c.status) << ','
          << (c.status == CellStatus::kOk ? format_full(c.value) : "") << ','
          << (c.best_in_row ? 1 : 0) << ',' << (c.worse_than_original ? 1 : 0) << ','
          << csv_field(c.note) << '\n';
    }
  }
  return out.str();
}

}  // namespace

std::string_view measure_name(Measure m) { return info(m).name; }

std::optional<Measure> parse_measure(std::string_view name) {
  for (const MeasureInfo& i : kMeasures) {
    if (i.name == name) return i.measure;
  }
  return std::nullopt;
}

std::vector<Measure> parse_measure_list(std::string_view csv) {
  std::vector<Measure> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t end = std::min(csv.find(',', start), csv.size());
    const std::string_view token = csv.substr(start, end - start);
    if (!token.empty()) {
      const auto m = parse_measure(token);
      if (!m) {
        throw Error(ErrorKind::kInvalidArgument,
                    "unknown measure '" + std::string(token) + "'");
      }
      if (std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
    }
    start = end + 1;
  }
  return out;
}

std::vector<Measure> all_measures() {
  std::vector<Measure> out;
  for (const MeasureInfo& i : kMeasures) out.push_back(i.measure);
  return out;
}

Polarity polarity(Measure m) { return info(m).polarity; }
bool is_full_reference(Measure m) { return info(m).full_reference; }
bool is_checker_measure(Measure m) { return info(m).checker; }
int display_decimals(Measure m) { return info(m).decimals; }

bool ComparisonReport::has_errors() const {
  return std::any_of(rows.begin(), rows.end(), [](const ReportRow& r) {
    return std::any_of(r.cells.begin(), r.cells.end(),
                       [](const Cell& c) { return c.status == CellStatus::kError; });
  });
}

void apply_flags(ComparisonReport& report) {
  for (ReportRow& row : report.rows) {
    const Polarity p = polarity(row.measure);
    std::optional<double> best;
    for (std::size_t i = 0; i < row.cells.size(); ++i) {
      Cell& c = row.cells[i];
      c.best_in_row = false;
      c.worse_than_original = false;
      if (i == 0 || c.status != CellStatus::kOk) continue;
      if (!best || better(p, c.value, *best)) best = c.value;
    }
    if (row.cells.empty()) continue;
    const Cell& original = row.cells.front();
    for (std::size_t i = 1; i < row.cells.size(); ++i) {
      Cell& c = row.cells[i];
      if (c.status != CellStatus::kOk) continue;
      c.best_in_row = best && c.value == *best;
      c.worse_than_original =
          original.status == CellStatus::kOk && better(p, original.value, c.value);
    }
  }
}

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "markdown" || name == "md") return ReportFormat::kMarkdown;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  return std::nullopt;
}

std::string report_to_json(const ComparisonReport& report) {
  json rows = json::array();
  for (const ReportRow& r : report.rows) {
    json cells = json::array();
    for (const Cell& c : r.cells) {
      cells.push_back({{"status", status_name(c.status)},
                       {"value", c.status == CellStatus::kOk ? value_to_json(c.value) : json()},
                       {"note", c.note},
                       {"best_in_row", c.best_in_row},
                       {"worse_than_original", c.worse_than_original}});
    }
    rows.push_back({{"scene", r.scene},
                    {"measure", measure_name(r.measure)},
                    {"item", r.item},
                    {"cells", std::move(cells)}});
  }
  json measures = json::array();
  for (Measure m : report.provenance.measures) measures.push_back(measure_name(m));
  const json doc = {
      {"provenance",
       {{"constants_version", report.provenance.constants_version},
        {"config_hash", report.provenance.config_hash},
        {"preprocess_quarter", report.provenance.preprocess_quarter},
        {"measures", std::move(measures)}}},
      {"columns", report.columns},
      {"rows", std::move(rows)},
  };
  return doc.dump(2) + "\n";
}

ComparisonReport report_from_json(std::string_view text) {
  ComparisonReport report;
  try {
    const json doc = json::parse(text);
    const json& prov = doc.at("provenance");
    report.provenance.constants_version = prov.at("constants_version").get<std::string>();
    report.provenance.config_hash = prov.at("config_hash").get<std::string>();
    report.provenance.preprocess_quarter = prov.at("preprocess_quarter").get<bool>();
    for (const json& m : prov.at("measures")) {
      report.provenance.measures.push_back(require_measure(m.get<std::string>()));
    }
    report.columns = doc.at("columns").get<std::vector<std::string>>();
    for (const json& r : doc.at("rows")) {
      ReportRow row;
      row.scene = r.at("scene").get<std::string>();
      row.measure = require_measure(r.at("measure").get<std::string>());
      row.item = r.at("item").get<std::string>();
      for (const json& c : r.at("cells")) {
        Cell cell;
        cell.status = parse_status(c.at("status").get<std::string>());
        if (cell.status == CellStatus::kOk) cell.value = value_from_json(c.at("value"));
        cell.note = c.at("note").get<std::string>();
        cell.best_in_row = c.at("best_in_row").get<bool>();
        cell.worse_than_original = c.at("worse_than_original").get<bool>();
        row.cells.push_back(std::move(cell));
      }
      report.rows.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kInvalidArgument, std::string("invalid report JSON: ") + e.what());
  }
  return report;
}

std::string render_report(const ComparisonReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::kMarkdown: return render_markdown(report);
    case ReportFormat::kCsv: return render_csv(report);
    case ReportFormat::kJson: return report_to_json(report);
  }
  return {};
}

double measure_image(Measure m, const ImageBuffer& img, const Config& config,
                     const ImageBuffer* reference) {
  if (is_full_reference(m) && reference == nullptr) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(measure_name(m)) + " needs a reference image");
  }
  switch (m) {
    case Measure::kUciqe: return uciqe(img, config.constants).value;
    case Measure::kUiqm: return uiqm(img, config.constants).value;
    case Measure::kCcf: return ccf(img, config.constants, config.edge_threshold).value;
    case Measure::kMse: return mse_psnr(*reference, img).mse;
    case Measure::kPsnr: return mse_psnr(*reference, img).psnr;
    case Measure::kSsim: return ssim(*reference, img, config.ssim);
    case Measure::kQu: return qu(*reference, img, config.ssim).value;
    case Measure::kEntropy: return entropy(img);
    case Measure::kEdges:
      return static_cast<double>(visible_edge_count(img, config.edge_threshold).count);
    case Measure::kDeltaE00:
    case Measure::kPhi:
      break;
  }
  throw Error(ErrorKind::kInvalidArgument,
              std::string(measure_name(m)) + " is a colour-checker measure; use the checker protocol");
}

}  // namespace uwiqa
