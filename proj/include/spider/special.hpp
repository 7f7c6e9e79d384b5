#pragma once

namespace spider {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Gamma function via the Lanczos approximation (g = 7, 9 terms), with the
/// reflection formula below 1/2. Relative error is below 1e-13 on (0, 10].
double lanczos_gamma(double x);

/// log Gamma(x) for x > 0, same approximation.
double lanczos_log_gamma(double x);

}  // namespace spider
