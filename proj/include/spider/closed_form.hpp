#pragma once

#include <functional>
#include <string>
#include <vector>

namespace spider {

enum class LawKind {
  ArcSine,           ///< density 1/(pi sqrt(z(1-z))) on (0,1)
  StableRatioPower,  ///< X^mu with X = S/S' a ratio of iid one-sided stable(mu)
  StableRatioA,      ///< A = S'/(S'+S) = 1/(1+X)
  SpiderOccupation,  ///< one coordinate of the n-ray occupation vector
};

/// A fully parameterized law. Use the named constructors; they validate.
struct LawSpec {
  LawKind kind = LawKind::ArcSine;
  double mu = 0.0;  // StableRatioPower, StableRatioA
  int n = 0;        // SpiderOccupation

  static LawSpec arcsine();
  static LawSpec ratio_power(double mu);
  static LawSpec ratio_a(double mu);
  static LawSpec spider(int n);

  /// Throws DomainError unless each parameter is present exactly when the kind needs it.
  void validate() const;

  /// Short tag such as "spider_occupation[n=3]" used in file headers and names.
  std::string label() const;
  /// Right end of the support: 1 for the [0,1] laws, +inf for X^mu.
  double support_upper() const;
};

/// @name Arc-sine law
///@{
double arcsine_pdf(double z);
double arcsine_cdf(double z);
///@}

/// @name Ratio of two one-sided stable variables
///@{
double ratio_power_pdf(double y, double mu);
double ratio_power_cdf(double y, double mu);
double ratio_A_pdf(double z, double mu);
double ratio_A_cdf(double z, double mu);
///@}

/// @name Occupation fraction of one ray of the n-ray spider
///@{
double spider_pdf(double z, int n);
double spider_cdf(double z, int n);
///@}

/// E[1/(1 + sX)] = 1/(1 + s^mu), s >= 0.
double stieltjes_transform(double s, double mu);
/// E[X^s] = sin(pi s) / (mu sin(pi s / mu)), 0 < s < mu.
double mellin_transform(double s, double mu);
/// E[S_mu^(mu s)] = Gamma(1-s)/Gamma(1-mu s), s < 1.
double fractional_moment(double s, double mu);

/// Density / distribution function dispatch on a LawSpec.
double pdf(const LawSpec& law, double x);
double cdf(const LawSpec& law, double x);

/// Integral of the density over [a, b] to absolute error 1e-8 or better.
///
/// The endpoint singularities of the [0,1] laws are removed by substitution
/// before adaptive Gauss-Kronrod runs: z = sin^2(theta) for the arc-sine type
/// laws, and z = v^(1/mu) (mirrored at 1) for StableRatioA, whose density
/// behaves like z^(mu-1) at 0. b may be +inf for StableRatioPower.
double integrate_density(const LawSpec& law, double a, double b);

/// Integral of f(x) * pdf(x) over [a, b], same substitutions as integrate_density.
double integrate_against(const LawSpec& law, const std::function<double(double)>& f, double a,
                         double b);

/// Tabulated density and distribution function of one law.
///
/// For [0,1] laws the grid is z = k/(points+1), k = 0..points+1: the interior
/// points plus both endpoints. The pdf at an endpoint is the one-sided limit
/// (possibly +inf); the cdf there is exactly 0 and 1. For StableRatioPower the
/// grid is y = t/(1-t) over the same t values without t = 1.
struct DensityCurve {
  LawSpec law;
  std::vector<double> grid;
  std::vector<double> pdf_values;
  std::vector<double> cdf_values;
};

DensityCurve make_density_curve(const LawSpec& law, int interior_points = 999);

}  // namespace spider
