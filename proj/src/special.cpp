#include "spider/special.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "spider/errors.hpp"

namespace spider {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Series part A_g(z) for z = x - 1, x >= 1/2.
double lanczos_series(double z) {
  double sum = kLanczosCoeffs[0];
  for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
    sum += kLanczosCoeffs[i] / (z + static_cast<double>(i));
  }
  return sum;
}

}  // namespace

double lanczos_gamma(double x) {
  if (!std::isfinite(x)) throw DomainError("lanczos_gamma: non-finite argument");
  if (x <= 0.0 && x == std::floor(x)) {
    throw DomainError("lanczos_gamma: pole at non-positive integer");
  }
  if (x < 0.5) {
    return kPi / (std::sin(kPi * x) * lanczos_gamma(1.0 - x));
  }
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  // t^(z+1/2) e^-t computed as a product of two square roots to delay overflow.
  const double half_power = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * kPi) * half_power * (half_power * std::exp(-t)) * lanczos_series(z);
}

double lanczos_log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("lanczos_log_gamma: requires x > 0");
  if (x < 0.5) {
    return std::log(kPi / std::sin(kPi * x)) - lanczos_log_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(lanczos_series(z));
}

}  // namespace spider
