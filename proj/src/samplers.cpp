#include "spider/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "spider/errors.hpp"
#include "spider/parallel.hpp"
#include "spider/special.hpp"

namespace spider {
namespace {

void check_rays(int n, const char* who) {
  if (n < 2) {
    std::ostringstream msg;
    msg << who << ": ray count n must be >= 2, got " << n;
    throw DomainError(msg.str());
  }
}

}  // namespace

StableParams::StableParams(double mu) : mu_(mu) {
  if (!(mu > 0.0 && mu < 1.0)) {
    std::ostringstream msg;
    msg << "StableParams: mu must lie in (0,1), got " << mu;
    throw DomainError(msg.str());
  }
}

SimplexVector::SimplexVector(std::vector<double> fractions) : fractions_(std::move(fractions)) {
  if (fractions_.size() < 2) throw DomainError("SimplexVector: needs at least two coordinates");
  double sum = 0.0;
  for (double f : fractions_) {
    if (!(f >= 0.0 && f <= 1.0)) throw DomainError("SimplexVector: entry outside [0,1]");
    sum += f;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    std::ostringstream msg;
    msg << "SimplexVector: entries sum to " << sum;
    throw DomainError(msg.str());
  }
}

double sample_uniform(RngStream& rng) { return rng.uniform(); }

double sample_normal(RngStream& rng) {
  for (;;) {
    const double u = 2.0 * rng.uniform() - 1.0;
    const double v = 2.0 * rng.uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double sample_exponential(RngStream& rng) { return -std::log(rng.uniform()); }

double sample_cauchy(RngStream& rng) { return std::tan(kPi * (rng.uniform() - 0.5)); }

double sample_log_positive_stable(const StableParams& params, RngStream& rng) {
  const double mu = params.mu();
  const double one_minus = 1.0 - mu;
  for (;;) {
    const double v = kPi * rng.uniform();
    const double e = sample_exponential(rng);
    // Kanter: S = (a(V)/E)^((1-mu)/mu),
    // a(v) = [sin(mu v)^mu sin((1-mu) v)^(1-mu) / sin v]^(1/(1-mu)).
    const double log_a = (mu * std::log(std::sin(mu * v)) +
                          one_minus * std::log(std::sin(one_minus * v)) - std::log(std::sin(v))) /
                         one_minus;
    const double log_s = (one_minus / mu) * (log_a - std::log(e));
    if (std::isfinite(log_s)) return log_s;
    rng.count_redraw();
  }
}

double sample_positive_stable(const StableParams& params, RngStream& rng) {
  for (;;) {
    const double s = std::exp(sample_log_positive_stable(params, rng));
    if (s > 0.0 && std::isfinite(s)) return s;
    rng.count_redraw();
  }
}

double sample_stable_half(RngStream& rng) {
  for (;;) {
    const double n = sample_normal(rng);
    const double t = 1.0 / (2.0 * n * n);
    if (std::isfinite(t)) return t;
    rng.count_redraw();
  }
}

double sample_ratio_X(const StableParams& params, RngStream& rng) {
  for (;;) {
    const double d = sample_log_positive_stable(params, rng) - sample_log_positive_stable(params, rng);
    const double x = std::exp(d);
    if (x > 0.0 && std::isfinite(x)) return x;
    rng.count_redraw();
  }
}

double sample_c_mu(const StableParams& params, RngStream& rng) {
  const double mu = params.mu();
  return std::sin(kPi * mu) * sample_cauchy(rng) - std::cos(kPi * mu);
}

double sample_c_mu_positive(const StableParams& params, RngStream& rng) {
  for (;;) {
    const double c = sample_c_mu(params, rng);
    if (c > 0.0) return c;
  }
}

double sample_ratio_A(const StableParams& params, RngStream& rng) {
  // d = log(S/S'); A = 1/(1 + e^d).
  const double d = sample_log_positive_stable(params, rng) - sample_log_positive_stable(params, rng);
  if (d > 0.0) {
    const double e = std::exp(-d);
    return e / (1.0 + e);
  }
  // For d below about -37 the quotient rounds to 1; keep the draw inside (0,1).
  return std::min(1.0 / (1.0 + std::exp(d)), std::nextafter(1.0, 0.0));
}

double sample_arcsine(ArcsineRepresentation representation, RngStream& rng) {
  switch (representation) {
    case ArcsineRepresentation::NormalRatio: {
      for (;;) {
        const double a = sample_normal(rng);
        const double b = sample_normal(rng);
        const double a2 = a * a;
        const double denom = a2 + b * b;
        if (denom > 0.0) return a2 / denom;
        rng.count_redraw();
      }
    }
    case ArcsineRepresentation::CosineSquare: {
      const double c = std::cos(2.0 * kPi * rng.uniform());
      return c * c;
    }
    case ArcsineRepresentation::StableRatio: {
      const double t = sample_stable_half(rng);
      const double t_hat = sample_stable_half(rng);
      return t / (t + t_hat);
    }
    case ArcsineRepresentation::Cauchy: {
      const double c = sample_cauchy(rng);
      return 1.0 / (1.0 + c * c);
    }
  }
  throw DomainError("sample_arcsine: unknown representation");
}

SimplexVector sample_occupation_exact(int n, RngStream& rng) {
  check_rays(n, "sample_occupation_exact");
  std::vector<double> t(static_cast<std::size_t>(n));
  for (;;) {
    for (auto& v : t) v = sample_stable_half(rng);
    const double total = std::accumulate(t.begin(), t.end(), 0.0);
    if (std::isfinite(total)) {
      for (auto& v : t) v /= total;
      return SimplexVector(std::move(t));
    }
    rng.count_redraw();
  }
}

double sample_cauchy_spider_marginal(int n, RngStream& rng) {
  check_rays(n, "sample_cauchy_spider_marginal");
  const double c = static_cast<double>(n - 1) * sample_cauchy(rng);
  return 1.0 / (1.0 + c * c);
}

int SampleRequest::width() const { return law == SampleLaw::OccupationExact ? n : 1; }

std::string SampleRequest::label() const {
  std::ostringstream out;
  switch (law) {
    case SampleLaw::PositiveStable:
      out << "positive_stable[mu=" << mu << "]";
      break;
    case SampleLaw::StableHalf:
      out << "stable_half";
      break;
    case SampleLaw::RatioX:
      out << "ratio_x[mu=" << mu << "]";
      break;
    case SampleLaw::RatioPower:
      out << "stable_ratio_power[mu=" << mu << "]";
      break;
    case SampleLaw::RatioA:
      out << "stable_ratio_a[mu=" << mu << "]";
      break;
    case SampleLaw::CMu:
      out << "c_mu[mu=" << mu << "]";
      break;
    case SampleLaw::ArcSine:
      out << "arcsine";
      break;
    case SampleLaw::OccupationExact:
      out << "spider_occupation[n=" << n << "]";
      break;
    case SampleLaw::CauchySpiderMarginal:
      out << "cauchy_spider_marginal[n=" << n << "]";
      break;
  }
  return out.str();
}

std::vector<std::string> SampleRequest::columns() const {
  const std::string base = label();
  if (width() == 1) return {base};
  std::vector<std::string> names;
  for (int j = 1; j <= width(); ++j) names.push_back(base + ":" + std::to_string(j));
  return names;
}

void SampleRequest::validate() const {
  switch (law) {
    case SampleLaw::PositiveStable:
    case SampleLaw::RatioX:
    case SampleLaw::RatioPower:
    case SampleLaw::RatioA:
    case SampleLaw::CMu:
      StableParams{mu};
      return;
    case SampleLaw::OccupationExact:
    case SampleLaw::CauchySpiderMarginal:
      check_rays(n, "SampleRequest");
      return;
    case SampleLaw::StableHalf:
    case SampleLaw::ArcSine:
      return;
  }
}

double sample_scalar(const SampleRequest& request, RngStream& rng) {
  switch (request.law) {
    case SampleLaw::PositiveStable:
      return sample_positive_stable(StableParams{request.mu}, rng);
    case SampleLaw::StableHalf:
      return sample_stable_half(rng);
    case SampleLaw::RatioX:
      return sample_ratio_X(StableParams{request.mu}, rng);
    case SampleLaw::RatioPower:
      return std::pow(sample_ratio_X(StableParams{request.mu}, rng), request.mu);
    case SampleLaw::RatioA:
      return sample_ratio_A(StableParams{request.mu}, rng);
    case SampleLaw::CMu:
      return sample_c_mu(StableParams{request.mu}, rng);
    case SampleLaw::ArcSine:
      return sample_arcsine(request.representation, rng);
    case SampleLaw::CauchySpiderMarginal:
      return sample_cauchy_spider_marginal(request.n, rng);
    case SampleLaw::OccupationExact:
      break;
  }
  throw UsageError("sample_scalar: " + request.label() + " is vector valued");
}

std::vector<double> SampleBatch::column(std::size_t col) const {
  std::vector<double> out(rows);
  for (std::size_t r = 0; r < rows; ++r) out[r] = at(r, col);
  return out;
}

SampleBatch sample_batch(const SampleRequest& request, std::size_t count, std::uint64_t seed,
                         std::uint64_t stream_count, unsigned threads) {
  request.validate();
  if (count == 0) throw UsageError("sample_batch: count must be positive");
  if (stream_count == 0) throw UsageError("sample_batch: stream_count must be positive");
  stream_count = std::min<std::uint64_t>(stream_count, count);

  SampleBatch batch;
  batch.request = request;
  batch.seed = seed;
  batch.stream_count = stream_count;
  batch.rows = count;
  batch.cols = static_cast<std::size_t>(request.width());
  batch.values.resize(batch.rows * batch.cols);
  std::vector<std::uint64_t> redraws(stream_count, 0);

  parallel_for(stream_count, threads, [&](std::size_t k) {
    RngStream rng(seed, k);
    const std::size_t begin = count * k / stream_count;
    const std::size_t end = count * (k + 1) / stream_count;
    for (std::size_t row = begin; row < end; ++row) {
      double* out = batch.values.data() + row * batch.cols;
      if (request.law == SampleLaw::OccupationExact) {
        const SimplexVector v = sample_occupation_exact(request.n, rng);
        for (std::size_t j = 0; j < v.size(); ++j) out[j] = v[j];
      } else {
        out[0] = sample_scalar(request, rng);
      }
    }
    redraws[k] = rng.redraws();
  });
  batch.redraw_count = std::accumulate(redraws.begin(), redraws.end(), std::uint64_t{0});
  return batch;
}

}  // namespace spider
