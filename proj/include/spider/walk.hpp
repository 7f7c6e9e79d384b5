#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spider/rng.hpp"
#include "spider/samplers.hpp"

namespace spider {

/// Random walk on the n-ray spider lattice: rays meet at the origin, the
/// radial distance moves +-1 with probability 1/2, and from the origin the
/// walk steps to distance 1 on a ray chosen uniformly.
///
/// Lattice time 1 step = 1/steps of continuum time and 1 site = 1/sqrt(steps)
/// of space. A step taken from the origin counts towards the ray it enters,
/// so occupation counts always sum to the number of steps.
struct SpiderConfig {
  int n = 2;
  std::int64_t steps = 10000;
  std::int64_t paths = 1000;
  std::uint64_t seed = 0;
  /// Permits steps < 1000 and n = 1 (reflecting walk); unit tests only.
  bool allow_small = false;
  /// Step cap for stopping rules, as a multiple of `steps`.
  double cap_factor = 1e6;

  static constexpr std::int64_t kMinStatisticalSteps = 1000;

  void validate() const;
  std::int64_t step_cap() const;
};

struct SpiderPathSummary {
  std::vector<std::int64_t> occupation_counts;  ///< per ray, sums to `steps`
  std::int64_t steps = 0;
  std::int64_t zero_visits = 1;    ///< times in [0, steps] spent at the origin, t = 0 included
  std::int64_t last_zero_step = 0;
  int final_ray = 0;               ///< 1-based; 0 when the walk ends at the origin
  std::int64_t final_distance = 0;
};

/// Walks config.steps steps from the origin.
SpiderPathSummary simulate_path(const SpiderConfig& config, RngStream& rng);

SimplexVector occupation_fraction(const SpiderPathSummary& summary);
/// last_zero_step / steps, the lattice version of g_1.
double last_zero_fraction(const SpiderPathSummary& summary);
/// zero_visits / sqrt(steps). Proportional to the local time at 0 with an uncalibrated constant.
double local_time_proxy(const SpiderPathSummary& summary);

enum class StoppingKind { FixedTime, InverseOccupation, InverseLocalTime };

struct StoppingRule {
  StoppingKind kind = StoppingKind::FixedTime;
  double level = 1.0;  ///< t, s or l
  int ray = 1;         ///< 1-based, InverseOccupation only

  static StoppingRule fixed_time(double t);
  static StoppingRule inverse_occupation(int ray, double s);
  static StoppingRule inverse_local_time(double l);

  void validate(int n) const;
  std::string label() const;
};

/// Stepwise walks every lattice step. Excursion draws whole excursions from
/// the origin at once: the length L of an excursion of the simple walk has
/// P(L > 2k) = C(2k,k)/4^k, so it is sampled by inversion, and the walk stays
/// on one ray for the whole excursion. Both engines produce the same law;
/// Auto uses Stepwise for FixedTime and Excursion for the inverse rules.
enum class WalkEngine { Auto, Stepwise, Excursion };

struct StopOutcome {
  std::optional<SimplexVector> fractions;  ///< empty when the step cap was hit
  std::int64_t stopped_step = 0;
  std::int64_t zero_visits = 0;
  bool discarded() const noexcept { return !fractions.has_value(); }
};

/// Runs until the rule fires and returns the occupation fractions there.
///   FixedTime(t):            after round(t * steps) steps
///   InverseOccupation(j, s): first step where ray j's count exceeds s * steps
///   InverseLocalTime(l):     first step where zero_visits exceeds l * sqrt(steps)
/// Paths that reach config.step_cap() first are discarded.
StopOutcome stop_at(const SpiderConfig& config, const StoppingRule& rule, RngStream& rng,
                    WalkEngine engine = WalkEngine::Auto);

/// Excursion length from the origin (even, >= 2) if it is <= limit, otherwise nullopt.
std::optional<std::int64_t> sample_excursion_length(RngStream& rng, std::int64_t limit);

struct StopBatch {
  std::vector<StopOutcome> outcomes;  ///< indexed by path id
  std::int64_t discarded = 0;

  /// Coordinate j (0-based) over the kept paths, in path order.
  std::vector<double> coordinate(std::size_t j) const;
  /// Sum of the first two coordinates over the kept paths.
  std::vector<double> leading_pair_sum() const;
  double discard_fraction() const;
};

/// config.paths independent paths; path i uses RngStream(config.seed, i).
StopBatch run_stopping_batch(const SpiderConfig& config, const StoppingRule& rule,
                             WalkEngine engine = WalkEngine::Auto, unsigned threads = 1);

std::vector<SpiderPathSummary> simulate_batch(const SpiderConfig& config, unsigned threads = 1);

}  // namespace spider
