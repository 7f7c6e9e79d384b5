#include "spider/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "spider/closed_form.hpp"
#include "spider/errors.hpp"
#include "spider/samplers.hpp"
#include "spider/special.hpp"
#include "spider/walk.hpp"

namespace spider {
namespace {

constexpr double kSeriesCutoff = 1e-12;

std::vector<double> sorted_copy(std::span<const double> xs) {
  std::vector<double> out(xs.begin(), xs.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

void GofReport::decide() {
  switch (threshold_kind) {
    case ThresholdKind::PValueAtLeast:
      pass = p_value.has_value() && *p_value >= threshold;
      return;
    case ThresholdKind::StatisticAtMost:
    case ThresholdKind::WithinStandardErrors:
      pass = statistic <= threshold;
      return;
  }
}

GofReport GofReport::with_threshold(ThresholdKind kind, double value) const {
  GofReport copy = *this;
  copy.threshold_kind = kind;
  copy.threshold = value;
  copy.decide();
  return copy;
}

double kolmogorov_survival(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  if (lambda < 1.18) {
    // Jacobi theta form, converges fast for small lambda.
    const double a = kPi * kPi / (8.0 * lambda * lambda);
    double sum = 0.0;
    for (int k = 1; k < 1000; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(-odd * odd * a);
      sum += term;
      if (term < kSeriesCutoff) break;
    }
    return std::clamp(1.0 - std::sqrt(2.0 * kPi) / lambda * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k < 1000; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < kSeriesCutoff) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

GofReport ks_one_sample(std::span<const double> samples, const CdfFunction& cdf,
                        std::string test_name, std::uint64_t seed) {
  if (samples.size() < 10) throw UsageError("ks_one_sample: needs at least 10 samples");
  const std::vector<double> xs = sorted_copy(samples);
  const double m = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    const double above = static_cast<double>(i + 1) / m - f;
    const double below = f - static_cast<double>(i) / m;
    d = std::max({d, above, below});
  }
  GofReport report;
  report.test_name = std::move(test_name);
  report.statistic = d;
  report.p_value = kolmogorov_survival(std::sqrt(m) * d);
  report.n1 = xs.size();
  report.seed = seed;
  report.threshold_kind = ThresholdKind::PValueAtLeast;
  report.threshold = kSignificance;
  report.decide();
  return report;
}

GofReport ks_two_sample(std::span<const double> a, std::span<const double> b,
                        std::string test_name, std::uint64_t seed) {
  if (a.empty() || b.empty()) throw UsageError("ks_two_sample: both samples must be nonempty");
  const std::vector<double> xs = sorted_copy(a);
  const std::vector<double> ys = sorted_copy(b);
  const double na = static_cast<double>(xs.size());
  const double nb = static_cast<double>(ys.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < xs.size() && j < ys.size()) {
    const double v = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] == v) ++i;
    while (j < ys.size() && ys[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double ne = na * nb / (na + nb);
  GofReport report;
  report.test_name = std::move(test_name);
  report.statistic = d;
  report.p_value = kolmogorov_survival(std::sqrt(ne) * d);
  report.n1 = xs.size();
  report.n2 = ys.size();
  report.seed = seed;
  report.threshold_kind = ThresholdKind::PValueAtLeast;
  report.threshold = kSignificance;
  report.decide();
  return report;
}

GofReport mc_transform_check(std::string test_name,
                             const std::function<double(RngStream&)>& sampler,
                             const std::function<double(double)>& functional, double target,
                             std::uint64_t n_samples, RngStream& rng) {
  if (n_samples < 2) throw UsageError("mc_transform_check: needs at least two samples");
  double mean = 0.0;
  double m2 = 0.0;
  std::uint64_t bad = 0;
  std::uint64_t k = 0;
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    const double v = functional(sampler(rng));
    if (!std::isfinite(v)) {
      ++bad;
      continue;
    }
    ++k;
    const double delta = v - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (v - mean);
  }
  if (bad > 0) {
    std::ostringstream msg;
    msg << "mc_transform_check(" << test_name << "): " << bad << " of " << n_samples
        << " functional values are not finite";
    throw DomainError(msg.str());
  }
  const double sd = std::sqrt(m2 / static_cast<double>(n_samples - 1));
  const double se = sd / std::sqrt(static_cast<double>(n_samples));
  const double gap = std::abs(mean - target);

  GofReport report;
  report.test_name = std::move(test_name);
  report.statistic = se > 0.0 ? gap / se : (gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  report.n1 = n_samples;
  report.seed = rng.seed();
  report.threshold_kind = ThresholdKind::WithinStandardErrors;
  report.threshold = kStandardErrorBand;
  std::ostringstream note;
  note.precision(10);
  note << "mean=" << mean << " target=" << target << " se=" << se;
  report.note = note.str();
  report.decide();
  return report;
}

GofReport stream_independence_check(std::uint64_t seed, std::uint64_t stream_a,
                                    std::uint64_t stream_b, std::uint64_t m) {
  if (m < 10) throw UsageError("stream_independence_check: needs at least 10 draws");
  RngStream ra(seed, stream_a);
  RngStream rb(seed, stream_b);
  double sa = 0.0, sb = 0.0, saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::uint64_t i = 0; i < m; ++i) {
    const double x = ra.uniform() - 0.5;
    const double y = rb.uniform() - 0.5;
    sa += x;
    sb += y;
    saa += x * x;
    sbb += y * y;
    sab += x * y;
  }
  const double md = static_cast<double>(m);
  const double cov = sab / md - (sa / md) * (sb / md);
  const double va = saa / md - (sa / md) * (sa / md);
  const double vb = sbb / md - (sb / md) * (sb / md);
  const double r = cov / std::sqrt(va * vb);

  GofReport report;
  std::ostringstream name;
  name << "stream_independence[" << stream_a << "," << stream_b << "]";
  report.test_name = name.str();
  report.statistic = std::sqrt(md) * std::abs(r);
  report.n1 = m;
  report.n2 = m;
  report.seed = seed;
  report.threshold_kind = ThresholdKind::WithinStandardErrors;
  report.threshold = kStandardErrorBand;
  report.note = "pearson_r=" + std::to_string(r);
  report.decide();
  return report;
}

double scaled_occupation_cdf(double y, int n) {
  if (n < 2) throw DomainError("scaled_occupation_cdf: n must be >= 2");
  if (y <= 0.0) return 0.0;
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  if (y >= n2) return 1.0;
  return spider_cdf(y / n2, n);
}

double cauchy_square_cdf(double y) {
  if (y <= 0.0) return 0.0;
  return (2.0 / kPi) * std::atan(std::sqrt(y));
}

std::vector<ConvergencePoint> corollary_curve(std::span<const int> n_values, int grid_size) {
  if (grid_size < 2) throw DomainError("corollary_curve: grid_size must be >= 2");
  for (int n : n_values) {
    if (n < 2) throw DomainError("corollary_curve: every n must be >= 2");
  }
  constexpr double kLogLo = -4.0;
  constexpr double kLogHi = 6.0;
  std::vector<ConvergencePoint> out;
  out.reserve(n_values.size());
  for (int n : n_values) {
    auto gap = [n](double y) { return std::abs(scaled_occupation_cdf(y, n) - cauchy_square_cdf(y)); };
    double sup = gap(static_cast<double>(n) * static_cast<double>(n));
    for (int k = 0; k < grid_size; ++k) {
      const double e = kLogLo + (kLogHi - kLogLo) * static_cast<double>(k) / (grid_size - 1);
      sup = std::max(sup, gap(std::pow(10.0, e)));
    }
    out.push_back({n, sup});
  }
  return out;
}

std::vector<GofReport> verify_theorem1(const TheoremOneOptions& options) {
  if (options.n < 2) throw UsageError("verify_theorem1: n must be >= 2");
  SpiderConfig base;
  base.n = options.n;
  base.steps = options.steps;
  base.paths = options.paths;
  base.cap_factor = options.cap_factor;
  base.validate();

  struct Source {
    std::string name;
    std::vector<double> coord1;
    std::vector<double> pair_sum;
    std::optional<double> discard_fraction;
    std::uint64_t seed;
  };
  std::vector<Source> sources;

  const StoppingRule rules[] = {
      StoppingRule::fixed_time(1.0),
      StoppingRule::inverse_occupation(2, options.occupation_level),
      StoppingRule::inverse_local_time(options.local_time_level),
  };
  const char* rule_names[] = {"fixed_time", "inverse_occupation", "inverse_local_time"};
  for (std::size_t r = 0; r < 3; ++r) {
    SpiderConfig config = base;
    config.seed = derive_seed(options.seed, r + 1);
    const StopBatch batch = run_stopping_batch(config, rules[r], WalkEngine::Auto, options.threads);
    Source src{rule_names[r], batch.coordinate(0), {}, std::nullopt, config.seed};
    if (options.n >= 3) src.pair_sum = batch.leading_pair_sum();
    if (rules[r].kind != StoppingKind::FixedTime) src.discard_fraction = batch.discard_fraction();
    sources.push_back(std::move(src));
  }
  {
    SampleRequest exact{SampleLaw::OccupationExact, 0.5, options.n};
    const std::uint64_t seed = derive_seed(options.seed, 4);
    const SampleBatch batch =
        sample_batch(exact, static_cast<std::size_t>(options.paths), seed, 64, options.threads);
    Source src{"exact", batch.column(0), {}, std::nullopt, seed};
    if (options.n >= 3) {
      src.pair_sum.resize(batch.rows);
      for (std::size_t i = 0; i < batch.rows; ++i) src.pair_sum[i] = batch.at(i, 0) + batch.at(i, 1);
    }
    sources.push_back(std::move(src));
  }

  const std::string prefix = "theorem1[n=" + std::to_string(options.n) + "] ";
  std::vector<GofReport> reports;
  for (std::size_t a = 0; a < sources.size(); ++a) {
    for (std::size_t b = a + 1; b < sources.size(); ++b) {
      reports.push_back(ks_two_sample(sources[a].coord1, sources[b].coord1,
                                      prefix + "coord1 " + sources[a].name + " vs " + sources[b].name,
                                      options.seed)
                            .with_threshold(ThresholdKind::StatisticAtMost, options.ks_threshold));
    }
  }
  if (options.n >= 3) {
    for (std::size_t a = 0; a < sources.size(); ++a) {
      for (std::size_t b = a + 1; b < sources.size(); ++b) {
        reports.push_back(
            ks_two_sample(sources[a].pair_sum, sources[b].pair_sum,
                          prefix + "coord1+coord2 " + sources[a].name + " vs " + sources[b].name,
                          options.seed)
                .with_threshold(ThresholdKind::StatisticAtMost, options.ks_threshold));
      }
    }
  }
  const int n = options.n;
  reports.push_back(ks_one_sample(sources[0].coord1, [n](double z) { return spider_cdf(z, n); },
                                  prefix + "coord1 fixed_time vs spider_cdf", options.seed)
                        .with_threshold(ThresholdKind::StatisticAtMost, options.ks_threshold));
  for (const auto& src : sources) {
    if (!src.discard_fraction) continue;
    GofReport r;
    r.test_name = prefix + src.name + " discard fraction";
    r.statistic = *src.discard_fraction;
    r.n1 = static_cast<std::uint64_t>(options.paths);
    r.seed = src.seed;
    r.threshold_kind = ThresholdKind::StatisticAtMost;
    r.threshold = options.max_discard_fraction;
    r.decide();
    reports.push_back(r);
  }
  return reports;
}

std::vector<GofReport> verify_theorem1(int n, std::int64_t paths, std::int64_t steps,
                                       std::uint64_t seed) {
  TheoremOneOptions options;
  options.n = n;
  options.paths = paths;
  options.steps = steps;
  options.seed = seed;
  return verify_theorem1(options);
}

bool all_pass(std::span<const GofReport> reports) {
  return std::all_of(reports.begin(), reports.end(), [](const GofReport& r) { return r.pass; });
}

}  // namespace spider
