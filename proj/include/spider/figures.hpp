#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "spider/closed_form.hpp"

namespace spider {

/// Default plotted parameters.
inline constexpr double kFigure1DefaultMus[] = {0.1, 0.25, 0.5, 0.75, 0.9};
inline constexpr int kFigure2DefaultRays[] = {2, 3, 4, 5, 8};

struct FigureResult {
  std::vector<DensityCurve> curves;
  std::vector<std::filesystem::path> files;  ///< CSVs, their sidecars, then the SVG
  std::filesystem::path svg_path;
};

/// Density of A = S'/(S'+S) for each mu: one CSV (+ sidecar) per curve named
/// `<prefix>_mu<value>.csv` and an overlay `<prefix>.svg`.
FigureResult emit_figure1(std::span<const double> mu_list, int grid,
                          const std::filesystem::path& out_prefix, bool deterministic);

/// Density of one spider occupation coordinate for each n: `<prefix>_n<value>.csv`
/// and `<prefix>.svg`.
FigureResult emit_figure2(std::span<const int> n_list, int grid,
                          const std::filesystem::path& out_prefix, bool deterministic);

}  // namespace spider
