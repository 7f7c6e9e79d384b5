#include "spider/figures.hpp"

#include "spider/errors.hpp"
#include "spider/io.hpp"

namespace spider {
namespace {

constexpr double kPlotPdfMax = 4.0;

std::filesystem::path with_suffix(const std::filesystem::path& prefix, const std::string& suffix) {
  return prefix.parent_path() / (prefix.filename().string() + suffix);
}

FigureResult emit(const std::vector<LawSpec>& laws, const std::vector<std::string>& tags,
                  const std::vector<std::string>& legend, int grid,
                  const std::filesystem::path& out_prefix, const std::string& title,
                  bool deterministic) {
  if (grid < 2) throw UsageError("figure: grid must have at least 2 points");
  FigureResult result;
  std::vector<SvgCurve> svg_curves;
  for (std::size_t i = 0; i < laws.size(); ++i) {
    DensityCurve curve = make_density_curve(laws[i], grid);
    const auto csv = with_suffix(out_prefix, "_" + tags[i] + ".csv");
    write_density_curve(curve, csv);
    result.files.push_back(csv);
    result.files.push_back(sidecar_path(csv));
    svg_curves.push_back({legend[i], curve.grid, curve.pdf_values});
    result.curves.push_back(std::move(curve));
  }
  result.svg_path = with_suffix(out_prefix, ".svg");
  write_text(result.svg_path, render_svg(title, svg_curves, 0.0, 1.0, kPlotPdfMax, deterministic));
  result.files.push_back(result.svg_path);
  return result;
}

}  // namespace

FigureResult emit_figure1(std::span<const double> mu_list, int grid,
                          const std::filesystem::path& out_prefix, bool deterministic) {
  if (mu_list.empty()) throw UsageError("figure1: empty mu list");
  std::vector<LawSpec> laws;
  std::vector<std::string> tags;
  std::vector<std::string> legend;
  for (double mu : mu_list) {
    if (!(mu > 0.0 && mu < 1.0)) throw UsageError("figure1: every mu must lie in (0,1)");
    laws.push_back(LawSpec::ratio_a(mu));
    tags.push_back("mu" + format_double(mu));
    legend.push_back("mu = " + format_double(mu));
  }
  return emit(laws, tags, legend, grid, out_prefix, "Density of A = S'/(S'+S)", deterministic);
}

FigureResult emit_figure2(std::span<const int> n_list, int grid,
                          const std::filesystem::path& out_prefix, bool deterministic) {
  if (n_list.empty()) throw UsageError("figure2: empty n list");
  std::vector<LawSpec> laws;
  std::vector<std::string> tags;
  std::vector<std::string> legend;
  for (int n : n_list) {
    if (n < 2) throw UsageError("figure2: every n must be >= 2");
    laws.push_back(LawSpec::spider(n));
    tags.push_back("n" + std::to_string(n));
    legend.push_back("n = " + std::to_string(n));
  }
  return emit(laws, tags, legend, grid, out_prefix, "Density of the ray-1 occupation fraction",
              deterministic);
}

}  // namespace spider
