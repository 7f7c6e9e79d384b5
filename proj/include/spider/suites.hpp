#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spider/stats.hpp"

namespace spider {

enum class Suite { Transforms, Densities, Theorem1, Corollary, All };

/// "transforms", "densities", "theorem1", "corollary" or "all"; UsageError otherwise.
Suite parse_suite(const std::string& name);
std::string suite_name(Suite suite);

struct SuiteOptions {
  std::uint64_t seed = 20261018;
  unsigned threads = 1;
  std::uint64_t transform_draws = 1'000'000;
  std::int64_t theorem_paths = 10'000;
  std::int64_t theorem_steps = 20'000;
  std::int64_t lattice_paths = 5'000;
};

/// Laplace, Stieltjes, Mellin and fractional-moment checks at 4 SE for
/// mu in {0.3, 0.5, 0.7}, plus the stable(1/2) and C_mu sanity checks.
std::vector<GofReport> transform_suite(const SuiteOptions& options);

/// Deterministic density checks: reduction identities, normalization, mean
/// identities, CDF/PDF consistency, closed-form CDFs against quadrature.
std::vector<GofReport> density_suite();

/// One-sample KS of coordinate 1 of the exact occupation sampler vs spider_cdf,
/// for n in {2, 3, 5} at 1e5 draws.
std::vector<GofReport> exact_sampler_suite(const SuiteOptions& options);

/// KS of FixedTime occupation vs spider_cdf(., 3) at steps 1e3, 1e4, 1e5: each
/// level reported, the last must be <= 0.02, and the sequence nonincreasing with
/// slack 0.005.
std::vector<GofReport> lattice_convergence_suite(const SuiteOptions& options);

/// n = 2 at 1e4 steps: last-zero fraction and ray-1 occupation vs the arc-sine
/// law (KS <= 0.02); local time proxy median stable between 1e4 and 4e4 steps.
std::vector<GofReport> levy_suite(const SuiteOptions& options);

/// Exact sampler, three stopping rules for n in {2, 3}, lattice convergence and
/// the Levy functionals.
std::vector<GofReport> theorem1_suite(const SuiteOptions& options);

/// The six convergence distances for n in {2,4,...,64}, strict decrease, the
/// n = 64 bound and grid stability between 1e3 and 1e4 points.
std::vector<GofReport> corollary_suite();

std::vector<GofReport> run_suite(Suite suite, const SuiteOptions& options);

}  // namespace spider
