#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spider/rng.hpp"

namespace spider {

/// Exponent of a one-sided stable law, normalized so that E[exp(-l S)] = exp(-l^mu).
class StableParams {
 public:
  explicit StableParams(double mu);
  double mu() const noexcept { return mu_; }

 private:
  double mu_;
};

/// Occupation fractions of n >= 2 rays: entries in [0,1] summing to 1 within 1e-12.
class SimplexVector {
 public:
  SimplexVector() = default;
  /// Validates the simplex invariant; throws DomainError otherwise.
  explicit SimplexVector(std::vector<double> fractions);

  std::size_t size() const noexcept { return fractions_.size(); }
  double operator[](std::size_t i) const { return fractions_[i]; }
  std::span<const double> values() const noexcept { return fractions_; }

  static constexpr double kSumTolerance = 1e-12;

 private:
  std::vector<double> fractions_;
};

/// @name Elementary variables
///@{
double sample_uniform(RngStream& rng);
/// Standard normal via the Marsaglia polar method (no cached second value).
double sample_normal(RngStream& rng);
double sample_exponential(RngStream& rng);
double sample_cauchy(RngStream& rng);
///@}

/// @name One-sided stable variables and their ratios
///@{
/// log S_mu by Kanter's representation; finite by construction (redraws otherwise).
double sample_log_positive_stable(const StableParams& params, RngStream& rng);
double sample_positive_stable(const StableParams& params, RngStream& rng);
/// 1/(2 N^2): the stable(1/2) law with Laplace transform exp(-sqrt(l)).
double sample_stable_half(RngStream& rng);
/// X = S/S' for independent stable(mu) draws.
double sample_ratio_X(const StableParams& params, RngStream& rng);
/// C_mu = sin(pi mu) C - cos(pi mu); may be negative.
double sample_c_mu(const StableParams& params, RngStream& rng);
/// C_mu conditioned on C_mu > 0, by rejection. Same law as X^mu.
double sample_c_mu_positive(const StableParams& params, RngStream& rng);
/// A = S'/(S'+S) = 1/(1+X), evaluated in log space as a logistic.
double sample_ratio_A(const StableParams& params, RngStream& rng);
///@}

/// @name Arc-sine and occupation-vector samplers
///@{
enum class ArcsineRepresentation {
  NormalRatio,  ///< N^2/(N^2 + N'^2)
  CosineSquare, ///< cos^2(U), U uniform on [0, 2 pi)
  StableRatio,  ///< T/(T + T'), T, T' iid stable(1/2)
  Cauchy,       ///< 1/(1 + C^2)
};
double sample_arcsine(ArcsineRepresentation representation, RngStream& rng);

/// (T_j / sum_i T_i)_{j<=n} for n iid stable(1/2) draws.
SimplexVector sample_occupation_exact(int n, RngStream& rng);
/// 1/(1 + (n-1)^2 C^2): the law of one coordinate of sample_occupation_exact(n).
double sample_cauchy_spider_marginal(int n, RngStream& rng);
///@}

/// Every law the batch driver knows how to draw.
enum class SampleLaw {
  PositiveStable,
  StableHalf,
  RatioX,
  RatioPower,  ///< X^mu
  RatioA,
  CMu,
  ArcSine,
  OccupationExact,
  CauchySpiderMarginal,
};

struct SampleRequest {
  SampleLaw law = SampleLaw::ArcSine;
  double mu = 0.5;
  int n = 2;
  ArcsineRepresentation representation = ArcsineRepresentation::StableRatio;

  /// Number of values per draw: n for OccupationExact, 1 otherwise.
  int width() const;
  /// Law name plus parameters, e.g. "occupation_exact[n=3]".
  std::string label() const;
  /// Column names for CSV output.
  std::vector<std::string> columns() const;
  /// Throws DomainError on invalid parameters.
  void validate() const;
};

/// Row-major samples plus the metadata that goes into the JSON sidecar.
struct SampleBatch {
  SampleRequest request;
  std::uint64_t seed = 0;
  std::uint64_t stream_count = 1;
  std::size_t rows = 0;
  std::size_t cols = 1;
  std::vector<double> values;
  std::uint64_t redraw_count = 0;

  double at(std::size_t row, std::size_t col) const { return values[row * cols + col]; }
  /// Copy of one column.
  std::vector<double> column(std::size_t col) const;
};

/// Draws `count` samples. Row i belongs to stream floor(i * streams / count)
/// and rows of one stream are drawn in order, so the output depends only on
/// (request, count, seed, stream_count) and never on the number of threads.
SampleBatch sample_batch(const SampleRequest& request, std::size_t count, std::uint64_t seed,
                         std::uint64_t stream_count = 1, unsigned threads = 1);

/// Single draw of a scalar law (width 1) from a request.
double sample_scalar(const SampleRequest& request, RngStream& rng);

}  // namespace spider
