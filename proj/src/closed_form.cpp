#include "spider/closed_form.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "spider/errors.hpp"
#include "spider/quadrature.hpp"
#include "spider/special.hpp"

namespace spider {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_mu(double mu, const char* who) {
  if (!(mu > 0.0 && mu < 1.0)) {
    std::ostringstream msg;
    msg << who << ": stable exponent mu must lie in (0,1), got " << mu;
    throw DomainError(msg.str());
  }
}

void check_rays(int n, const char* who) {
  if (n < 2) {
    std::ostringstream msg;
    msg << who << ": ray count n must be >= 2, got " << n;
    throw DomainError(msg.str());
  }
}

void check_open_unit(double z, const char* who) {
  if (!(z > 0.0 && z < 1.0)) {
    std::ostringstream msg;
    msg << who << ": argument must lie in (0,1), got " << z;
    throw DomainError(msg.str());
  }
}

void check_closed_unit(double z, const char* who) {
  if (!(z >= 0.0 && z <= 1.0)) {
    std::ostringstream msg;
    msg << who << ": argument must lie in [0,1], got " << z;
    throw DomainError(msg.str());
  }
}

// Density kernels taking z and 1-z separately, so that callers holding an
// exact complement (sin^2 / cos^2 substitutions) keep full precision near 1.

double arcsine_kernel(double z, double zbar) { return 1.0 / (kPi * std::sqrt(z * zbar)); }

double spider_kernel(double z, double zbar, int n) {
  const double m = static_cast<double>(n - 1);
  return 1.0 / (kPi * std::sqrt(z) * std::sqrt(zbar) * (m * z + zbar / m));
}

// z(1-z)[((1-z)/z)^mu + (z/(1-z))^mu + 2cos(pi mu)] rewritten as
// (z zbar)^(1-mu) [zbar^(2mu) + z^(2mu) + 2cos(pi mu)(z zbar)^mu]; no overflow at the ends.
double ratio_a_kernel(double z, double zbar, double mu) {
  const double zz = z * zbar;
  const double bracket = std::pow(zbar, 2.0 * mu) + std::pow(z, 2.0 * mu) +
                         2.0 * std::cos(kPi * mu) * std::pow(zz, mu);
  return std::sin(kPi * mu) / (kPi * std::pow(zz, 1.0 - mu) * bracket);
}

bool arcsine_type(const LawSpec& law) {
  return law.kind == LawKind::ArcSine || law.kind == LawKind::SpiderOccupation;
}

double unit_kernel(const LawSpec& law, double z, double zbar) {
  switch (law.kind) {
    case LawKind::ArcSine:
      return arcsine_kernel(z, zbar);
    case LawKind::SpiderOccupation:
      return spider_kernel(z, zbar, law.n);
    case LawKind::StableRatioA:
      return ratio_a_kernel(z, zbar, law.mu);
    case LawKind::StableRatioPower:
      break;
  }
  throw DomainError("unit_kernel: law is not supported on [0,1]");
}

const QuadratureOptions kDensityQuadrature{1e-13, 1e-13, 8000};

double checked(const QuadratureResult& r, const char* who) {
  if (!r.converged || !std::isfinite(r.value)) {
    std::ostringstream msg;
    msg << who << ": quadrature did not converge (estimate " << r.error_estimate << ")";
    throw DomainError(msg.str());
  }
  return r.value;
}

// f(z) pdf(z) dz over [a,b] within [0,1], via z = sin^2(theta).
double integrate_arcsine_type(const LawSpec& law, const std::function<double(double)>& f, double a,
                              double b) {
  const double theta_a = std::asin(std::sqrt(a));
  const double theta_b = std::asin(std::sqrt(b));
  auto integrand = [&](double theta) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double z = s * s;
    const double zbar = c * c;
    if (z <= 0.0 || zbar <= 0.0) return 0.0;
    return f(z) * unit_kernel(law, z, zbar) * 2.0 * s * c;
  };
  return checked(gauss_kronrod(integrand, theta_a, theta_b, kDensityQuadrature),
                 "integrate_density");
}

// StableRatioA: density ~ z^(mu-1) at 0 and ~ (1-z)^(mu-1) at 1. On [0,1/2] map
// z = v^(1/mu); on [1/2,1] map 1-z = v^(1/mu). The transformed integrand is bounded.
double integrate_ratio_a(const LawSpec& law, const std::function<double(double)>& f, double a,
                         double b) {
  const double mu = law.mu;
  const double inv_mu = 1.0 / mu;
  const double edge_limit = std::sin(kPi * mu) / (kPi * mu);
  double total = 0.0;

  if (a < 0.5) {
    const double hi = std::min(b, 0.5);
    auto lower = [&](double v) {
      const double z = std::pow(v, inv_mu);
      if (z <= 0.0) return f(0.0) * edge_limit;
      const double jac = inv_mu * std::pow(v, inv_mu - 1.0);
      return f(z) * ratio_a_kernel(z, 1.0 - z, mu) * jac;
    };
    total += checked(gauss_kronrod(lower, std::pow(a, mu), std::pow(hi, mu), kDensityQuadrature),
                     "integrate_density");
  }
  if (b > 0.5) {
    const double lo = std::max(a, 0.5);
    auto upper = [&](double v) {
      const double zbar = std::pow(v, inv_mu);
      if (zbar <= 0.0) return f(1.0) * edge_limit;
      const double jac = inv_mu * std::pow(v, inv_mu - 1.0);
      return f(1.0 - zbar) * ratio_a_kernel(1.0 - zbar, zbar, mu) * jac;
    };
    // v runs from (1-lo)^mu down to (1-b)^mu as z goes from lo up to b.
    total += checked(
        gauss_kronrod(upper, std::pow(1.0 - b, mu), std::pow(1.0 - lo, mu), kDensityQuadrature),
        "integrate_density");
  }
  return total;
}

double integrate_ratio_power(const LawSpec& law, const std::function<double(double)>& f, double a,
                             double b) {
  const double mu = law.mu;
  double total = 0.0;
  if (a < 1.0) {
    const double hi = std::min(b, 1.0);
    total += checked(gauss_kronrod([&](double y) { return f(y) * ratio_power_pdf(y, mu); }, a, hi,
                                   kDensityQuadrature),
                     "integrate_density");
  }
  if (b > 1.0) {
    // y = 1/u on [max(a,1), b]
    const double u_lo = std::isinf(b) ? 0.0 : 1.0 / b;
    const double u_hi = 1.0 / std::max(a, 1.0);
    auto tail = [&](double u) {
      if (u <= 0.0) return 0.0;
      const double y = 1.0 / u;
      return f(y) * ratio_power_pdf(y, mu) / (u * u);
    };
    total += checked(gauss_kronrod(tail, u_lo, u_hi, kDensityQuadrature), "integrate_density");
  }
  return total;
}

}  // namespace

LawSpec LawSpec::arcsine() { return LawSpec{LawKind::ArcSine, 0.0, 0}; }

LawSpec LawSpec::ratio_power(double mu) {
  LawSpec law{LawKind::StableRatioPower, mu, 0};
  law.validate();
  return law;
}

LawSpec LawSpec::ratio_a(double mu) {
  LawSpec law{LawKind::StableRatioA, mu, 0};
  law.validate();
  return law;
}

LawSpec LawSpec::spider(int n) {
  LawSpec law{LawKind::SpiderOccupation, 0.0, n};
  law.validate();
  return law;
}

void LawSpec::validate() const {
  switch (kind) {
    case LawKind::ArcSine:
      if (mu != 0.0 || n != 0) throw DomainError("LawSpec: ArcSine takes no parameters");
      return;
    case LawKind::StableRatioPower:
    case LawKind::StableRatioA:
      check_mu(mu, "LawSpec");
      if (n != 0) throw DomainError("LawSpec: stable ratio laws take no ray count");
      return;
    case LawKind::SpiderOccupation:
      check_rays(n, "LawSpec");
      if (mu != 0.0) throw DomainError("LawSpec: SpiderOccupation takes no mu");
      return;
  }
}

std::string LawSpec::label() const {
  std::ostringstream out;
  switch (kind) {
    case LawKind::ArcSine:
      out << "arcsine";
      break;
    case LawKind::StableRatioPower:
      out << "stable_ratio_power[mu=" << mu << "]";
      break;
    case LawKind::StableRatioA:
      out << "stable_ratio_a[mu=" << mu << "]";
      break;
    case LawKind::SpiderOccupation:
      out << "spider_occupation[n=" << n << "]";
      break;
  }
  return out.str();
}

double LawSpec::support_upper() const { return kind == LawKind::StableRatioPower ? kInf : 1.0; }

double arcsine_pdf(double z) {
  check_open_unit(z, "arcsine_pdf");
  return arcsine_kernel(z, 1.0 - z);
}

double arcsine_cdf(double z) {
  check_closed_unit(z, "arcsine_cdf");
  if (z == 0.0) return 0.0;
  if (z == 1.0) return 1.0;
  return (2.0 / kPi) * std::asin(std::sqrt(z));
}

double ratio_power_pdf(double y, double mu) {
  check_mu(mu, "ratio_power_pdf");
  if (!(y >= 0.0)) throw DomainError("ratio_power_pdf: requires y >= 0");
  if (std::isinf(y)) return 0.0;
  const double c = std::cos(kPi * mu);
  return std::sin(kPi * mu) / (kPi * mu) / (y * y + 2.0 * y * c + 1.0);
}

double ratio_power_cdf(double y, double mu) {
  check_mu(mu, "ratio_power_cdf");
  if (!(y >= 0.0)) throw DomainError("ratio_power_cdf: requires y >= 0");
  if (std::isinf(y)) return 1.0;
  // arctan((y+c)/s) - arctan(c/s) folded into one atan2; the angle lies in [0, pi mu).
  const double s = std::sin(kPi * mu);
  const double c = std::cos(kPi * mu);
  return std::atan2(y * s, 1.0 + y * c) / (kPi * mu);
}

double ratio_A_pdf(double z, double mu) {
  check_mu(mu, "ratio_A_pdf");
  check_open_unit(z, "ratio_A_pdf");
  return ratio_a_kernel(z, 1.0 - z, mu);
}

double ratio_A_cdf(double z, double mu) {
  check_mu(mu, "ratio_A_cdf");
  check_closed_unit(z, "ratio_A_cdf");
  if (z == 0.0) return 0.0;
  if (z == 1.0) return 1.0;
  // P(A <= z) = P(X^mu >= w), w = ((1-z)/z)^mu; the upper tail of X^mu is atan2(s, w + c)/(pi mu).
  const double w = std::pow((1.0 - z) / z, mu);
  return std::atan2(std::sin(kPi * mu), w + std::cos(kPi * mu)) / (kPi * mu);
}

double spider_pdf(double z, int n) {
  check_rays(n, "spider_pdf");
  check_open_unit(z, "spider_pdf");
  return spider_kernel(z, 1.0 - z, n);
}

double spider_cdf(double z, int n) {
  check_rays(n, "spider_cdf");
  check_closed_unit(z, "spider_cdf");
  if (z == 0.0) return 0.0;
  if (z == 1.0) return 1.0;
  // P(1/(1+(n-1)^2 C^2) <= z) = (2/pi) arctan((n-1) sqrt(z/(1-z)))
  return (2.0 / kPi) * std::atan2(static_cast<double>(n - 1) * std::sqrt(z), std::sqrt(1.0 - z));
}

double stieltjes_transform(double s, double mu) {
  check_mu(mu, "stieltjes_transform");
  if (!(s >= 0.0)) throw DomainError("stieltjes_transform: requires s >= 0");
  return 1.0 / (1.0 + std::pow(s, mu));
}

double mellin_transform(double s, double mu) {
  check_mu(mu, "mellin_transform");
  if (!(s > 0.0 && s < mu)) {
    std::ostringstream msg;
    msg << "mellin_transform: requires 0 < s < mu, got s=" << s << ", mu=" << mu;
    throw DomainError(msg.str());
  }
  return std::sin(kPi * s) / (mu * std::sin(kPi * s / mu));
}

double fractional_moment(double s, double mu) {
  check_mu(mu, "fractional_moment");
  if (!(s < 1.0)) throw DomainError("fractional_moment: requires s < 1");
  return lanczos_gamma(1.0 - s) / lanczos_gamma(1.0 - mu * s);
}

double pdf(const LawSpec& law, double x) {
  switch (law.kind) {
    case LawKind::ArcSine:
      return arcsine_pdf(x);
    case LawKind::StableRatioPower:
      return ratio_power_pdf(x, law.mu);
    case LawKind::StableRatioA:
      return ratio_A_pdf(x, law.mu);
    case LawKind::SpiderOccupation:
      return spider_pdf(x, law.n);
  }
  return 0.0;
}

double cdf(const LawSpec& law, double x) {
  switch (law.kind) {
    case LawKind::ArcSine:
      return arcsine_cdf(x);
    case LawKind::StableRatioPower:
      return ratio_power_cdf(x, law.mu);
    case LawKind::StableRatioA:
      return ratio_A_cdf(x, law.mu);
    case LawKind::SpiderOccupation:
      return spider_cdf(x, law.n);
  }
  return 0.0;
}

double integrate_density(const LawSpec& law, double a, double b) {
  return integrate_against(law, [](double) { return 1.0; }, a, b);
}

double integrate_against(const LawSpec& law, const std::function<double(double)>& f, double a,
                         double b) {
  law.validate();
  const double upper = law.support_upper();
  if (!(a >= 0.0 && a <= b && b <= upper) || std::isinf(a)) {
    std::ostringstream msg;
    msg << "integrate_density: interval [" << a << ", " << b << "] is not inside the support of "
        << law.label();
    throw DomainError(msg.str());
  }
  if (a == b) return 0.0;
  if (law.kind == LawKind::StableRatioPower) return integrate_ratio_power(law, f, a, b);
  if (arcsine_type(law)) return integrate_arcsine_type(law, f, a, b);
  return integrate_ratio_a(law, f, a, b);
}

DensityCurve make_density_curve(const LawSpec& law, int interior_points) {
  law.validate();
  if (interior_points < 1) throw DomainError("make_density_curve: need at least one grid point");
  DensityCurve curve{law, {}, {}, {}};
  const int cells = interior_points + 1;
  const bool unit_support = law.kind != LawKind::StableRatioPower;
  const int last = unit_support ? cells : cells - 1;
  curve.grid.reserve(static_cast<std::size_t>(last) + 1);
  for (int k = 0; k <= last; ++k) {
    const double t = static_cast<double>(k) / cells;
    double x = t;
    if (!unit_support) x = t / (1.0 - t);
    curve.grid.push_back(x);
    if (unit_support && (k == 0 || k == cells)) {
      curve.pdf_values.push_back(kInf);
      curve.cdf_values.push_back(k == 0 ? 0.0 : 1.0);
    } else {
      curve.pdf_values.push_back(pdf(law, x));
      curve.cdf_values.push_back(cdf(law, x));
    }
  }
  return curve;
}

}  // namespace spider
