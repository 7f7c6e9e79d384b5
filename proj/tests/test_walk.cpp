#include <cmath>
#include <numeric>

#include "doctest.h"
#include "spider/closed_form.hpp"
#include "spider/errors.hpp"
#include "spider/stats.hpp"
#include "spider/walk.hpp"

using namespace spider;

namespace {

SpiderConfig small(int n, std::int64_t steps, std::uint64_t seed = 1) {
  SpiderConfig c;
  c.n = n;
  c.steps = steps;
  c.paths = 1;
  c.seed = seed;
  c.allow_small = true;
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  SpiderConfig c;
  c.steps = 999;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.steps = 1000;
  c.n = 1;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.n = 2;
  CHECK_NOTHROW(c.validate());
  CHECK_NOTHROW(small(1, 10).validate());
}

TEST_CASE("occupation counts sum to the horizon") {
  RngStream rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    const auto s = simulate_path(small(4, 1234), rng);
    REQUIRE(std::accumulate(s.occupation_counts.begin(), s.occupation_counts.end(), 0LL) == 1234);
    REQUIRE(s.zero_visits >= 1);
    REQUIRE(s.last_zero_step <= s.steps);
    REQUIRE(s.last_zero_step % 2 == 0);
  }
}

TEST_CASE("a one-step path never returns") {
  RngStream rng(6);
  const auto s = simulate_path(small(3, 1), rng);
  CHECK(s.zero_visits == 1);
  CHECK(last_zero_fraction(s) == 0.0);
  CHECK(s.final_distance == 1);
  CHECK(s.final_ray >= 1);
  CHECK(s.final_ray <= 3);
}

TEST_CASE("occupation fraction and local time proxy arithmetic") {
  SpiderPathSummary s;
  s.occupation_counts = {3, 7};
  s.steps = 10;
  s.zero_visits = 4;
  const auto f = occupation_fraction(s);
  CHECK(f[0] == doctest::Approx(0.3));
  CHECK(f[1] == doctest::Approx(0.7));
  s.steps = 100;
  s.occupation_counts = {30, 70};
  CHECK(local_time_proxy(s) == doctest::Approx(0.4));
}

TEST_CASE("fixed time 1 reproduces simulate_path") {
  const SpiderConfig c = small(3, 500, 9);
  RngStream a(9, 0), b(9, 0);
  const auto summary = simulate_path(c, a);
  const auto stop = stop_at(c, StoppingRule::fixed_time(1.0), b, WalkEngine::Stepwise);
  REQUIRE(stop.fractions);
  const auto frac = occupation_fraction(summary);
  for (int j = 0; j < 3; ++j) CHECK((*stop.fractions)[j] == frac[j]);
  CHECK(stop.stopped_step == 500);
}

TEST_CASE("inverse occupation stops exactly on the threshold") {
  const SpiderConfig c = small(3, 1000, 10);
  for (std::uint64_t id = 0; id < 50; ++id) {
    RngStream rng(10, id);
    const auto out = stop_at(c, StoppingRule::inverse_occupation(2, 0.5), rng);
    if (out.discarded()) continue;
    const double count_ray2 = (*out.fractions)[1] * static_cast<double>(out.stopped_step);
    REQUIRE(std::llround(count_ray2) == 501);
  }
}

TEST_CASE("the reflecting walk spends all its time on its only ray") {
  RngStream rng(11);
  const auto s = simulate_path(small(1, 1000), rng);
  CHECK(s.occupation_counts[0] == 1000);
}

TEST_CASE("excursion lengths follow the return-time law") {
  // P(L > 2) = 1/2, P(L > 4) = 3/8.
  RngStream rng(12);
  int gt2 = 0, gt4 = 0;
  const int m = 200000;
  for (int i = 0; i < m; ++i) {
    const auto len = sample_excursion_length(rng, 1LL << 40);
    REQUIRE(len);
    REQUIRE(*len % 2 == 0);
    gt2 += *len > 2;
    gt4 += *len > 4;
  }
  CHECK(std::abs(gt2 / double(m) - 0.5) < 4.0 * std::sqrt(0.25 / m));
  CHECK(std::abs(gt4 / double(m) - 0.375) < 4.0 * std::sqrt(0.375 * 0.625 / m));
}

TEST_CASE("stepwise and excursion engines agree in law") {
  SpiderConfig c;
  c.n = 3;
  c.steps = 2000;
  c.paths = 4000;
  c.seed = 13;
  const auto rule = StoppingRule::inverse_local_time(1.0);
  const auto a = run_stopping_batch(c, rule, WalkEngine::Stepwise);
  c.seed = 14;
  const auto b = run_stopping_batch(c, rule, WalkEngine::Excursion);
  CHECK(ks_two_sample(a.coordinate(0), b.coordinate(0)).pass);
}

TEST_CASE("stopping rules validate") {
  CHECK_THROWS_AS(StoppingRule::inverse_occupation(4, 1.0).validate(3), DomainError);
  CHECK_THROWS_AS(StoppingRule::fixed_time(-1.0).validate(3), DomainError);
  RngStream rng(1);
  CHECK_THROWS_AS(stop_at(small(2, 100), StoppingRule::fixed_time(1.0), rng, WalkEngine::Excursion),
                  UsageError);
}

TEST_CASE("batches are reproducible and thread independent") {
  SpiderConfig c;
  c.n = 3;
  c.steps = 1000;
  c.paths = 64;
  c.seed = 15;
  const auto a = run_stopping_batch(c, StoppingRule::inverse_occupation(1, 1.0), WalkEngine::Auto, 1);
  const auto b = run_stopping_batch(c, StoppingRule::inverse_occupation(1, 1.0), WalkEngine::Auto, 3);
  CHECK(a.coordinate(0) == b.coordinate(0));
  CHECK(a.discarded == b.discarded);
}
