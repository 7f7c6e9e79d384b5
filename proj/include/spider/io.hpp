#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "spider/closed_form.hpp"
#include "spider/samplers.hpp"
#include "spider/stats.hpp"
#include "spider/walk.hpp"

namespace spider {

inline constexpr const char* kToolVersion = "0.1.0";

/// Shortest decimal string that reads back to the same double; "inf" for +inf.
std::string format_double(double value);

/// RFC-4180 field: quoted when it holds a comma, quote or line break.
std::string csv_field(const std::string& text);

/// Header + rows; every row must have the header's width.
void write_csv(const std::filesystem::path& path, std::span<const std::string> header,
               const std::vector<std::vector<std::string>>& rows);

/// `samples.csv` -> `samples.json`.
std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

nlohmann::json law_to_json(const LawSpec& law);
nlohmann::json request_to_json(const SampleRequest& request);
nlohmann::json report_to_json(const GofReport& report);

/// Writes the sample CSV and its JSON sidecar
/// {law, parameters, seed, stream_count, n_samples, redraw_count}.
void write_sample_batch(const SampleBatch& batch, const std::filesystem::path& csv_path);

/// Writes the curve as CSV (z, pdf, cdf) plus a JSON sidecar describing the law.
void write_density_curve(const DensityCurve& curve, const std::filesystem::path& csv_path);

/// Per-path CSV: path_id, frac_1..frac_n, zero_visits, last_zero_fraction,
/// stopped_step, discarded.
void write_path_summaries(const std::vector<SpiderPathSummary>& summaries,
                          const std::filesystem::path& csv_path);
void write_stop_batch(const StopBatch& batch, int n, const std::filesystem::path& csv_path);

/// One JSON object per line.
void write_reports_jsonl(std::span<const GofReport> reports, const std::filesystem::path& path);
/// Fixed-width table, one line per report, PASS/FAIL in the last column.
void print_report_table(std::span<const GofReport> reports, std::ostream& out);

/// Provenance record written next to every CLI output.
struct RunManifest {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::string started;
  std::string finished;
  std::vector<std::string> outputs;
  std::string tool_version = kToolVersion;
  nlohmann::json extra = nlohmann::json::object();

  nlohmann::json to_json() const;
  void write(const std::filesystem::path& path) const;
};

/// UTC time as ISO-8601, or the Unix epoch when `deterministic` is set.
std::string timestamp_now(bool deterministic);

struct SvgCurve {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Overlay plot in a fixed 800x600 viewBox: one <path> per curve, clipped to
/// [x_min,x_max] x [0,y_max], with a colour legend. A generation-time comment is
/// embedded unless `deterministic`.
std::string render_svg(const std::string& title, std::span<const SvgCurve> curves, double x_min,
                       double x_max, double y_max, bool deterministic);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace spider
