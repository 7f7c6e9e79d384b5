#include "spider/io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "spider/errors.hpp"

namespace spider {
namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw UsageError("write to '" + path.string() + "' failed");
}

const char* threshold_kind_name(ThresholdKind kind) {
  switch (kind) {
    case ThresholdKind::PValueAtLeast:
      return "p_value_at_least";
    case ThresholdKind::StatisticAtMost:
      return "statistic_at_most";
    case ThresholdKind::WithinStandardErrors:
      return "within_standard_errors";
  }
  return "unknown";
}

const char* law_kind_name(LawKind kind) {
  switch (kind) {
    case LawKind::ArcSine:
      return "ArcSine";
    case LawKind::StableRatioPower:
      return "StableRatioPower";
    case LawKind::StableRatioA:
      return "StableRatioA";
    case LawKind::SpiderOccupation:
      return "SpiderOccupation";
  }
  return "unknown";
}

// Palette for the overlay plots.
constexpr const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fixed2(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << v;
  return out.str();
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv(const std::filesystem::path& path, std::span<const std::string> header,
               const std::vector<std::vector<std::string>>& rows) {
  auto out = open_for_write(path);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << csv_field(header[i]);
  }
  out << "\r\n";
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw UsageError("write_csv: row width differs from header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << csv_field(row[i]);
    }
    out << "\r\n";
  }
  finish(out, path);
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
  std::filesystem::path out = csv_path;
  out.replace_extension(".json");
  return out;
}

nlohmann::json law_to_json(const LawSpec& law) {
  nlohmann::json j;
  j["kind"] = law_kind_name(law.kind);
  j["label"] = law.label();
  if (law.kind == LawKind::StableRatioA || law.kind == LawKind::StableRatioPower) j["mu"] = law.mu;
  if (law.kind == LawKind::SpiderOccupation) j["n"] = law.n;
  return j;
}

nlohmann::json request_to_json(const SampleRequest& request) {
  nlohmann::json params = nlohmann::json::object();
  switch (request.law) {
    case SampleLaw::PositiveStable:
    case SampleLaw::RatioX:
    case SampleLaw::RatioPower:
    case SampleLaw::RatioA:
    case SampleLaw::CMu:
      params["mu"] = request.mu;
      break;
    case SampleLaw::OccupationExact:
    case SampleLaw::CauchySpiderMarginal:
      params["n"] = request.n;
      break;
    case SampleLaw::ArcSine:
      params["representation"] = static_cast<int>(request.representation);
      break;
    case SampleLaw::StableHalf:
      break;
  }
  return params;
}

nlohmann::json report_to_json(const GofReport& report) {
  nlohmann::json j;
  j["test_name"] = report.test_name;
  j["statistic"] = report.statistic;
  j["p_value"] = report.p_value ? nlohmann::json(*report.p_value) : nlohmann::json(nullptr);
  j["n1"] = report.n1;
  j["n2"] = report.n2;
  j["seed"] = report.seed;
  j["threshold_kind"] = threshold_kind_name(report.threshold_kind);
  j["threshold"] = report.threshold;
  j["verdict"] = report.pass ? "pass" : "fail";
  if (!report.note.empty()) j["note"] = report.note;
  return j;
}

void write_sample_batch(const SampleBatch& batch, const std::filesystem::path& csv_path) {
  const std::vector<std::string> header = batch.request.columns();
  std::vector<std::vector<std::string>> rows;
  rows.reserve(batch.rows);
  for (std::size_t r = 0; r < batch.rows; ++r) {
    std::vector<std::string> row;
    row.reserve(batch.cols);
    for (std::size_t c = 0; c < batch.cols; ++c) row.push_back(format_double(batch.at(r, c)));
    rows.push_back(std::move(row));
  }
  write_csv(csv_path, header, rows);

  nlohmann::json side;
  side["law"] = batch.request.label();
  side["parameters"] = request_to_json(batch.request);
  side["seed"] = batch.seed;
  side["stream_count"] = batch.stream_count;
  side["n_samples"] = batch.rows;
  side["redraw_count"] = batch.redraw_count;
  write_text(sidecar_path(csv_path), side.dump(2) + "\n");
}

void write_density_curve(const DensityCurve& curve, const std::filesystem::path& csv_path) {
  const std::vector<std::string> header = {"z", "pdf", "cdf"};
  std::vector<std::vector<std::string>> rows;
  rows.reserve(curve.grid.size());
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    rows.push_back({format_double(curve.grid[i]), format_double(curve.pdf_values[i]),
                    format_double(curve.cdf_values[i])});
  }
  write_csv(csv_path, header, rows);
  nlohmann::json side;
  side["law"] = law_to_json(curve.law);
  side["points"] = curve.grid.size();
  write_text(sidecar_path(csv_path), side.dump(2) + "\n");
}

void write_path_summaries(const std::vector<SpiderPathSummary>& summaries,
                          const std::filesystem::path& csv_path) {
  const std::size_t n = summaries.empty() ? 0 : summaries.front().occupation_counts.size();
  std::vector<std::string> header = {"path_id"};
  for (std::size_t j = 1; j <= n; ++j) header.push_back("frac_" + std::to_string(j));
  for (const char* name : {"zero_visits", "last_zero_fraction", "stopped_step", "discarded"}) {
    header.emplace_back(name);
  }
  std::vector<std::vector<std::string>> rows;
  rows.reserve(summaries.size());
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    const auto& s = summaries[i];
    std::vector<std::string> row = {std::to_string(i)};
    for (std::int64_t c : s.occupation_counts) {
      row.push_back(format_double(static_cast<double>(c) / static_cast<double>(s.steps)));
    }
    row.push_back(std::to_string(s.zero_visits));
    row.push_back(format_double(last_zero_fraction(s)));
    row.push_back(std::to_string(s.steps));
    row.emplace_back("0");
    rows.push_back(std::move(row));
  }
  write_csv(csv_path, header, rows);
}

void write_stop_batch(const StopBatch& batch, int n, const std::filesystem::path& csv_path) {
  std::vector<std::string> header = {"path_id"};
  for (int j = 1; j <= n; ++j) header.push_back("frac_" + std::to_string(j));
  for (const char* name : {"zero_visits", "last_zero_fraction", "stopped_step", "discarded"}) {
    header.emplace_back(name);
  }
  std::vector<std::vector<std::string>> rows;
  rows.reserve(batch.outcomes.size());
  for (std::size_t i = 0; i < batch.outcomes.size(); ++i) {
    const auto& o = batch.outcomes[i];
    std::vector<std::string> row = {std::to_string(i)};
    for (int j = 0; j < n; ++j) {
      row.push_back(o.fractions ? format_double((*o.fractions)[static_cast<std::size_t>(j)]) : "");
    }
    row.push_back(std::to_string(o.zero_visits));
    row.emplace_back("");  // last zero is only tracked for fixed-time summaries
    row.push_back(std::to_string(o.stopped_step));
    row.emplace_back(o.discarded() ? "1" : "0");
    rows.push_back(std::move(row));
  }
  write_csv(csv_path, header, rows);
}

void write_reports_jsonl(std::span<const GofReport> reports, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  for (const auto& r : reports) out << report_to_json(r).dump() << '\n';
  finish(out, path);
}

void print_report_table(std::span<const GofReport> reports, std::ostream& out) {
  std::size_t width = 10;
  for (const auto& r : reports) width = std::max(width, r.test_name.size());
  out << std::left << std::setw(static_cast<int>(width)) << "test" << "  " << std::setw(12)
      << "statistic" << "  " << std::setw(10) << "p_value" << "  " << std::setw(10) << "threshold"
      << "  verdict\n";
  for (const auto& r : reports) {
    std::ostringstream p;
    if (r.p_value) {
      p << std::setprecision(4) << *r.p_value;
    } else {
      p << "-";
    }
    std::ostringstream stat;
    stat << std::setprecision(6) << r.statistic;
    std::ostringstream thr;
    thr << std::setprecision(4) << r.threshold;
    out << std::left << std::setw(static_cast<int>(width)) << r.test_name << "  " << std::setw(12)
        << stat.str() << "  " << std::setw(10) << p.str() << "  " << std::setw(10) << thr.str()
        << "  " << (r.pass ? "PASS" : "FAIL") << '\n';
  }
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["parameters"] = parameters;
  j["seed"] = seed;
  j["started"] = started;
  j["finished"] = finished;
  j["outputs"] = outputs;
  j["tool_version"] = tool_version;
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  return j;
}

void RunManifest::write(const std::filesystem::path& path) const {
  write_text(path, to_json().dump(2) + "\n");
}

std::string timestamp_now(bool deterministic) {
  if (deterministic) return "1970-01-01T00:00:00Z";
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

std::string render_svg(const std::string& title, std::span<const SvgCurve> curves, double x_min,
                       double x_max, double y_max, bool deterministic) {
  constexpr double kWidth = 800.0;
  constexpr double kHeight = 600.0;
  constexpr double kLeft = 70.0;
  constexpr double kRight = 780.0;
  constexpr double kTop = 50.0;
  constexpr double kBottom = 540.0;
  auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * (kRight - kLeft); };
  auto py = [&](double y) { return kBottom - y / y_max * (kBottom - kTop); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  if (!deterministic) svg << "<!-- generated " << timestamp_now(false) << " -->\n";
  svg << "<title>" << xml_escape(title) << "</title>\n";
  svg << "<defs><clipPath id=\"plot-area\"><rect x=\"" << kLeft << "\" y=\"" << kTop
      << "\" width=\"" << kRight - kLeft << "\" height=\"" << kBottom - kTop
      << "\"/></clipPath></defs>\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"18\">"
      << xml_escape(title) << "</text>\n";

  // Axes and ticks.
  svg << "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight << "\" y2=\""
      << kBottom << "\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kBottom << "\"/>\n";
  svg << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (int k = 0; k <= 5; ++k) {
    const double x = x_min + (x_max - x_min) * k / 5.0;
    svg << "<text x=\"" << fixed2(px(x)) << "\" y=\"" << kBottom + 18
        << "\" text-anchor=\"middle\">" << fixed2(x) << "</text>\n";
    const double y = y_max * k / 5.0;
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << fixed2(py(y) + 4)
        << "\" text-anchor=\"end\">" << fixed2(y) << "</text>\n";
  }
  svg << "</g>\n";

  svg << "<g clip-path=\"url(#plot-area)\" fill=\"none\" stroke-width=\"2\">\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const auto& curve = curves[c];
    const char* colour = kColours[c % std::size(kColours)];
    svg << "<path stroke=\"" << colour << "\" data-label=\"" << xml_escape(curve.label) << "\" d=\"";
    bool first = true;
    for (std::size_t i = 0; i < curve.x.size(); ++i) {
      if (!std::isfinite(curve.y[i])) continue;
      // Clamp just above the frame so the clip box cuts steep ends cleanly.
      const double y = std::min(curve.y[i], 1.05 * y_max);
      svg << (first ? "M" : " L") << fixed2(px(curve.x[i])) << ',' << fixed2(py(y));
      first = false;
    }
    svg << "\"/>\n";
  }
  svg << "</g>\n";

  svg << "<g font-family=\"sans-serif\" font-size=\"13\">\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const double y = kTop + 15 + 20 * static_cast<double>(c);
    const char* colour = kColours[c % std::size(kColours)];
    svg << "<line x1=\"" << kRight - 150 << "\" y1=\"" << y << "\" x2=\"" << kRight - 120
        << "\" y2=\"" << y << "\" stroke=\"" << colour << "\" stroke-width=\"3\"/>\n";
    svg << "<text x=\"" << kRight - 112 << "\" y=\"" << y + 4 << "\">"
        << xml_escape(curves[c].label) << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto out = open_for_write(path);
  out << text;
  finish(out, path);
}

}  // namespace spider
