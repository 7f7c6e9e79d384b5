#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spider/rng.hpp"

namespace spider {

/// How a GofReport's threshold is read.
enum class ThresholdKind {
  PValueAtLeast,      ///< pass iff p_value >= threshold
  StatisticAtMost,    ///< pass iff statistic <= threshold
  WithinStandardErrors, ///< statistic is |mean - target| / SE; pass iff <= threshold
};

struct GofReport {
  std::string test_name;
  double statistic = 0.0;
  std::optional<double> p_value;
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;
  std::uint64_t seed = 0;
  ThresholdKind threshold_kind = ThresholdKind::StatisticAtMost;
  double threshold = 0.0;
  bool pass = false;
  /// Extra context: estimate and target for transform checks, guard warnings.
  std::string note;

  /// Recomputes `pass` from (statistic, p_value, threshold_kind, threshold).
  void decide();
  /// Returns a copy with a different threshold rule and a fresh verdict.
  GofReport with_threshold(ThresholdKind kind, double value) const;
};

/// Survival function of the Kolmogorov distribution, P(K > lambda).
double kolmogorov_survival(double lambda);

using CdfFunction = std::function<double(double)>;

/// One-sample KS statistic sup|F_m - F| with the asymptotic p-value at sqrt(m) D.
/// Default verdict: p >= 0.01. Needs at least 10 samples.
GofReport ks_one_sample(std::span<const double> samples, const CdfFunction& cdf,
                        std::string test_name = "ks_one_sample", std::uint64_t seed = 0);

/// Two-sample KS statistic with the asymptotic p-value at sqrt(n1 n2/(n1+n2)) D.
/// Symmetric in its arguments. Default verdict: p >= 0.01.
GofReport ks_two_sample(std::span<const double> a, std::span<const double> b,
                        std::string test_name = "ks_two_sample", std::uint64_t seed = 0);

/// Monte-Carlo check of E[functional(X)] = target: pass iff |mean - target| <= 4 SE.
/// Throws DomainError (with the count) if any functional value is non-finite.
GofReport mc_transform_check(std::string test_name, const std::function<double(RngStream&)>& sampler,
                             const std::function<double(double)>& functional, double target,
                             std::uint64_t n_samples, RngStream& rng);

inline constexpr double kStandardErrorBand = 4.0;
inline constexpr double kSignificance = 0.01;

/// Sample Pearson correlation of the first m uniforms of two streams of the same seed;
/// pass iff sqrt(m) |r| <= 4.
GofReport stream_independence_check(std::uint64_t seed, std::uint64_t stream_a,
                                    std::uint64_t stream_b, std::uint64_t m);

struct ConvergencePoint {
  int n = 2;
  double distance = 0.0;  ///< sup-norm CDF distance, in [0,1]
};

/// CDF of n^2 A with A the spider occupation law, i.e. n^2 / (1 + (n-1)^2 C^2).
double scaled_occupation_cdf(double y, int n);
/// CDF of C^2 for a standard Cauchy C.
double cauchy_square_cdf(double y);

/// Sup distance between the CDFs of n^2 A(n) and C^2 on grid_size log-spaced points
/// in [1e-4, 1e6] plus the support endpoint y = n^2 where the sup is attained.
/// Deterministic.
std::vector<ConvergencePoint> corollary_curve(std::span<const int> n_values, int grid_size);

struct TheoremOneOptions {
  int n = 2;
  std::int64_t paths = 10000;
  std::int64_t steps = 20000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double occupation_level = 1.0;  ///< s for InverseOccupation on ray 2
  double local_time_level = 1.0;  ///< l for InverseLocalTime
  double cap_factor = 1e6;
  double ks_threshold = 0.03;
  double max_discard_fraction = 0.01;
};

/// Runs FixedTime(1), InverseOccupation(ray 2, s), InverseLocalTime(l) and the
/// exact sampler, then reports: pairwise two-sample KS on coordinate 1 for all
/// six pairs, the same for the sum of the first two coordinates when n >= 3,
/// one one-sample KS of the FixedTime coordinate 1 against spider_cdf, and one
/// discard-rate report per inverse rule.
std::vector<GofReport> verify_theorem1(const TheoremOneOptions& options);

/// Convenience overload with defaults for everything else.
std::vector<GofReport> verify_theorem1(int n, std::int64_t paths, std::int64_t steps,
                                       std::uint64_t seed);

bool all_pass(std::span<const GofReport> reports);

}  // namespace spider
