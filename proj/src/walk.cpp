#include "spider/walk.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "spider/errors.hpp"
#include "spider/parallel.hpp"
#include "spider/special.hpp"

namespace spider {
namespace {

// u_{2k} = P(simple walk has not returned to 0 by time 2k) = C(2k,k)/4^k.
constexpr std::size_t kReturnTableSize = 4096;

const std::array<double, kReturnTableSize + 1>& no_return_table() {
  static const auto table = [] {
    std::array<double, kReturnTableSize + 1> u{};
    u[0] = 1.0;
    for (std::size_t k = 1; k <= kReturnTableSize; ++k) {
      u[k] = u[k - 1] * static_cast<double>(2 * k - 1) / static_cast<double>(2 * k);
    }
    return u;
  }();
  return table;
}

// Stirling expansion of log u_{2k}; truncation error below 1e-16 for k > 4096.
double log_no_return(std::int64_t k) {
  const double x = static_cast<double>(k);
  const double inv = 1.0 / x;
  const double inv3 = inv * inv * inv;
  return -0.5 * std::log(kPi * x) - inv / 8.0 + inv3 / 192.0 - inv3 * inv * inv / 640.0;
}

double log_no_return_any(std::int64_t k) {
  if (k <= static_cast<std::int64_t>(kReturnTableSize)) {
    return std::log(no_return_table()[static_cast<std::size_t>(k)]);
  }
  return log_no_return(k);
}

std::int64_t occupation_target(const StoppingRule& rule, std::int64_t steps) {
  return static_cast<std::int64_t>(std::floor(rule.level * static_cast<double>(steps))) + 1;
}

std::int64_t local_time_target(const StoppingRule& rule, std::int64_t steps) {
  return static_cast<std::int64_t>(
             std::floor(rule.level * std::sqrt(static_cast<double>(steps)))) + 1;
}

std::int64_t fixed_horizon(const StoppingRule& rule, std::int64_t steps) {
  return std::llround(rule.level * static_cast<double>(steps));
}

SimplexVector fractions_of(const std::vector<std::int64_t>& counts, std::int64_t total) {
  std::vector<double> f(counts.size());
  const double denom = static_cast<double>(total);
  for (std::size_t j = 0; j < counts.size(); ++j) f[j] = static_cast<double>(counts[j]) / denom;
  return SimplexVector(std::move(f));
}

struct WalkState {
  std::vector<std::int64_t> counts;
  std::int64_t t = 0;
  std::int64_t distance = 0;
  std::size_t ray = 0;
  std::int64_t zero_visits = 1;
  std::int64_t last_zero = 0;
};

// Walks up to `horizon` total steps.
void walk_fixed(WalkState& s, std::int64_t horizon, std::uint64_t n, RngStream& rng) {
  while (s.t < horizon) {
    if (s.distance == 0) {
      s.ray = static_cast<std::size_t>(rng.below(n));
      s.distance = 1;
      ++s.counts[s.ray];
      ++s.t;
      continue;
    }
    std::int64_t run = 0;
    const std::int64_t budget = horizon - s.t;
    std::int64_t d = s.distance;
    while (d > 0 && run < budget) {
      d += rng.bit() ? 1 : -1;
      ++run;
    }
    s.distance = d;
    s.t += run;
    s.counts[s.ray] += run;
    if (d == 0) {
      ++s.zero_visits;
      s.last_zero = s.t;
    }
  }
}

StopOutcome stop_stepwise(const SpiderConfig& config, const StoppingRule& rule, RngStream& rng) {
  const auto n = static_cast<std::uint64_t>(config.n);
  WalkState s;
  s.counts.assign(n, 0);
  if (rule.kind == StoppingKind::FixedTime) {
    walk_fixed(s, fixed_horizon(rule, config.steps), n, rng);
    return {fractions_of(s.counts, s.t), s.t, s.zero_visits};
  }

  const std::int64_t cap = config.step_cap();
  const bool by_occupation = rule.kind == StoppingKind::InverseOccupation;
  const auto target_ray = static_cast<std::size_t>(rule.ray - 1);
  const std::int64_t target = by_occupation ? occupation_target(rule, config.steps)
                                            : local_time_target(rule, config.steps);
  while (s.t < cap) {
    if (s.distance == 0) {
      s.ray = static_cast<std::size_t>(rng.below(n));
      s.distance = 1;
    } else {
      s.distance += rng.bit() ? 1 : -1;
    }
    ++s.t;
    ++s.counts[s.ray];
    if (by_occupation) {
      if (s.ray == target_ray && s.counts[s.ray] >= target) {
        return {fractions_of(s.counts, s.t), s.t, s.zero_visits};
      }
    }
    if (s.distance == 0) {
      ++s.zero_visits;
      if (!by_occupation && s.zero_visits >= target) {
        return {fractions_of(s.counts, s.t), s.t, s.zero_visits};
      }
    }
  }
  return {std::nullopt, s.t, s.zero_visits};
}

StopOutcome stop_excursion(const SpiderConfig& config, const StoppingRule& rule, RngStream& rng) {
  const auto n = static_cast<std::uint64_t>(config.n);
  std::vector<std::int64_t> counts(n, 0);
  std::int64_t t = 0;
  std::int64_t zero_visits = 1;
  const std::int64_t cap = config.step_cap();
  const bool by_occupation = rule.kind == StoppingKind::InverseOccupation;
  const auto target_ray = static_cast<std::size_t>(rule.ray - 1);
  const std::int64_t target = by_occupation ? occupation_target(rule, config.steps)
                                            : local_time_target(rule, config.steps);

  for (;;) {
    const auto ray = static_cast<std::size_t>(rng.below(n));
    const std::int64_t remaining = cap - t;
    if (remaining <= 0) return {std::nullopt, t, zero_visits};

    if (by_occupation && ray == target_ray) {
      const std::int64_t need = target - counts[ray];
      const std::int64_t limit = std::min(remaining, need - 1);
      const auto length = sample_excursion_length(rng, limit);
      if (!length) {
        if (need > remaining) return {std::nullopt, cap, zero_visits};
        counts[ray] += need;
        t += need;
        return {fractions_of(counts, t), t, zero_visits};
      }
      counts[ray] += *length;
      t += *length;
      ++zero_visits;
      continue;
    }

    const auto length = sample_excursion_length(rng, remaining);
    if (!length) return {std::nullopt, cap, zero_visits};
    counts[ray] += *length;
    t += *length;
    ++zero_visits;
    if (!by_occupation && zero_visits >= target) {
      return {fractions_of(counts, t), t, zero_visits};
    }
  }
}

}  // namespace

void SpiderConfig::validate() const {
  const int min_rays = allow_small ? 1 : 2;
  if (n < min_rays) {
    std::ostringstream msg;
    msg << "SpiderConfig: ray count n must be >= " << min_rays << ", got " << n;
    throw DomainError(msg.str());
  }
  const std::int64_t min_steps = allow_small ? 1 : kMinStatisticalSteps;
  if (steps < min_steps) {
    std::ostringstream msg;
    msg << "SpiderConfig: steps must be >= " << min_steps << ", got " << steps;
    throw DomainError(msg.str());
  }
  if (paths < 1) throw DomainError("SpiderConfig: paths must be positive");
  if (!(cap_factor >= 1.0)) throw DomainError("SpiderConfig: cap_factor must be >= 1");
}

std::int64_t SpiderConfig::step_cap() const {
  const double cap = std::ceil(cap_factor * static_cast<double>(steps));
  constexpr double kLargest = 4.0e18;
  return static_cast<std::int64_t>(std::min(cap, kLargest));
}

SpiderPathSummary simulate_path(const SpiderConfig& config, RngStream& rng) {
  config.validate();
  WalkState s;
  s.counts.assign(static_cast<std::size_t>(config.n), 0);
  walk_fixed(s, config.steps, static_cast<std::uint64_t>(config.n), rng);

  SpiderPathSummary summary;
  summary.occupation_counts = std::move(s.counts);
  summary.steps = config.steps;
  summary.zero_visits = s.zero_visits;
  summary.last_zero_step = s.last_zero;
  summary.final_distance = s.distance;
  summary.final_ray = s.distance > 0 ? static_cast<int>(s.ray) + 1 : 0;
  return summary;
}

SimplexVector occupation_fraction(const SpiderPathSummary& summary) {
  if (summary.steps <= 0) throw DomainError("occupation_fraction: summary has no steps");
  return fractions_of(summary.occupation_counts, summary.steps);
}

double last_zero_fraction(const SpiderPathSummary& summary) {
  if (summary.steps <= 0) throw DomainError("last_zero_fraction: summary has no steps");
  return static_cast<double>(summary.last_zero_step) / static_cast<double>(summary.steps);
}

double local_time_proxy(const SpiderPathSummary& summary) {
  if (summary.steps <= 0) throw DomainError("local_time_proxy: summary has no steps");
  return static_cast<double>(summary.zero_visits) / std::sqrt(static_cast<double>(summary.steps));
}

StoppingRule StoppingRule::fixed_time(double t) { return {StoppingKind::FixedTime, t, 1}; }

StoppingRule StoppingRule::inverse_occupation(int ray, double s) {
  return {StoppingKind::InverseOccupation, s, ray};
}

StoppingRule StoppingRule::inverse_local_time(double l) {
  return {StoppingKind::InverseLocalTime, l, 1};
}

void StoppingRule::validate(int n) const {
  if (!(level > 0.0) || !std::isfinite(level)) {
    throw DomainError("StoppingRule: level must be strictly positive");
  }
  if (kind == StoppingKind::InverseOccupation && (ray < 1 || ray > n)) {
    std::ostringstream msg;
    msg << "StoppingRule: ray index " << ray << " outside [1," << n << "]";
    throw DomainError(msg.str());
  }
}

std::string StoppingRule::label() const {
  std::ostringstream out;
  switch (kind) {
    case StoppingKind::FixedTime:
      out << "fixed_time[t=" << level << "]";
      break;
    case StoppingKind::InverseOccupation:
      out << "inverse_occupation[ray=" << ray << ",s=" << level << "]";
      break;
    case StoppingKind::InverseLocalTime:
      out << "inverse_local_time[l=" << level << "]";
      break;
  }
  return out.str();
}

std::optional<std::int64_t> sample_excursion_length(RngStream& rng, std::int64_t limit) {
  const std::int64_t k_max = limit / 2;
  if (k_max < 1) return std::nullopt;
  const double u = rng.uniform();
  const auto& table = no_return_table();

  // K = min{k >= 1 : u_{2k} < U}; the excursion has length 2K.
  if (u > table[kReturnTableSize]) {
    const auto first_below =
        std::upper_bound(table.begin() + 1, table.end(), u, [](double value, double entry) {
          return entry < value;
        });
    const auto k = static_cast<std::int64_t>(first_below - table.begin());
    if (k > k_max) return std::nullopt;
    return 2 * k;
  }

  const double log_u = std::log(u);
  if (log_u <= log_no_return_any(k_max)) return std::nullopt;

  // u_{2k} ~ 1/sqrt(pi k) gives the starting point; a step or two of correction remains.
  constexpr auto kFirst = static_cast<std::int64_t>(kReturnTableSize) + 1;
  const double guess = 1.0 / (kPi * u * u);
  std::int64_t k = guess >= static_cast<double>(k_max) ? k_max
                                                       : std::max(kFirst, static_cast<std::int64_t>(guess));
  while (k > kFirst && log_no_return(k - 1) < log_u) --k;
  while (log_no_return(k) >= log_u) ++k;
  return 2 * k;
}

StopOutcome stop_at(const SpiderConfig& config, const StoppingRule& rule, RngStream& rng,
                    WalkEngine engine) {
  config.validate();
  rule.validate(config.n);
  if (rule.kind == StoppingKind::FixedTime && fixed_horizon(rule, config.steps) < 1) {
    throw DomainError("stop_at: fixed time horizon rounds to zero steps");
  }
  if (rule.kind == StoppingKind::InverseLocalTime && local_time_target(rule, config.steps) < 2) {
    throw DomainError("stop_at: local time level below one zero visit");
  }
  if (engine == WalkEngine::Auto) {
    engine = rule.kind == StoppingKind::FixedTime ? WalkEngine::Stepwise : WalkEngine::Excursion;
  }
  if (engine == WalkEngine::Excursion && rule.kind == StoppingKind::FixedTime) {
    throw UsageError("stop_at: the excursion engine does not implement FixedTime");
  }
  return engine == WalkEngine::Stepwise ? stop_stepwise(config, rule, rng)
                                        : stop_excursion(config, rule, rng);
}

std::vector<double> StopBatch::coordinate(std::size_t j) const {
  std::vector<double> out;
  out.reserve(outcomes.size());
  for (const auto& o : outcomes) {
    if (o.fractions) out.push_back((*o.fractions)[j]);
  }
  return out;
}

std::vector<double> StopBatch::leading_pair_sum() const {
  std::vector<double> out;
  out.reserve(outcomes.size());
  for (const auto& o : outcomes) {
    if (o.fractions) out.push_back((*o.fractions)[0] + (*o.fractions)[1]);
  }
  return out;
}

double StopBatch::discard_fraction() const {
  return outcomes.empty() ? 0.0
                          : static_cast<double>(discarded) / static_cast<double>(outcomes.size());
}

StopBatch run_stopping_batch(const SpiderConfig& config, const StoppingRule& rule,
                             WalkEngine engine, unsigned threads) {
  config.validate();
  rule.validate(config.n);
  StopBatch batch;
  batch.outcomes.resize(static_cast<std::size_t>(config.paths));
  parallel_for(batch.outcomes.size(), threads, [&](std::size_t i) {
    RngStream rng(config.seed, i);
    batch.outcomes[i] = stop_at(config, rule, rng, engine);
  });
  batch.discarded = std::count_if(batch.outcomes.begin(), batch.outcomes.end(),
                                  [](const StopOutcome& o) { return o.discarded(); });
  return batch;
}

std::vector<SpiderPathSummary> simulate_batch(const SpiderConfig& config, unsigned threads) {
  config.validate();
  std::vector<SpiderPathSummary> out(static_cast<std::size_t>(config.paths));
  parallel_for(out.size(), threads, [&](std::size_t i) {
    RngStream rng(config.seed, i);
    out[i] = simulate_path(config, rng);
  });
  return out;
}

}  // namespace spider
