#pragma once

#include <cstddef>
#include <functional>

namespace spider {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  std::size_t max_subintervals = 4000;
};

/// Globally adaptive 15-point Gauss-Kronrod (G7/K15) quadrature on a finite
/// interval. The subinterval with the largest error estimate is bisected until
/// the summed estimate meets max(abs_tol, rel_tol * |value|).
QuadratureResult gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                               const QuadratureOptions& options = {});

/// Integral over [a, inf) through the map x = a + t / (1 - t), t in [0, 1).
QuadratureResult gauss_kronrod_to_infinity(const std::function<double(double)>& f, double a,
                                           const QuadratureOptions& options = {});

}  // namespace spider
