#include <cmath>

#include "doctest.h"
#include "spider/closed_form.hpp"
#include "spider/errors.hpp"
#include "spider/special.hpp"

using namespace spider;

TEST_CASE("arc-sine law values") {
  CHECK(arcsine_pdf(0.5) == doctest::Approx(2.0 / kPi).epsilon(1e-15));
  CHECK(arcsine_pdf(0.25) == doctest::Approx(4.0 / (kPi * std::sqrt(3.0))).epsilon(1e-15));
  CHECK(arcsine_cdf(0.25) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(arcsine_cdf(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(arcsine_cdf(0.0) == 0.0);
  CHECK(arcsine_cdf(1.0) == 1.0);
  CHECK_THROWS_AS(arcsine_pdf(0.0), DomainError);
  CHECK_THROWS_AS(arcsine_pdf(1.5), DomainError);
}

TEST_CASE("ratio A density against reference values") {
  // Reference: the generalised arc-sine density and its Cauchy-ratio CDF in 30-digit arithmetic.
  CHECK(ratio_A_pdf(0.2, 0.3) == doctest::Approx(0.48029497655577487).epsilon(1e-13));
  CHECK(ratio_A_pdf(0.6, 0.7) == doctest::Approx(1.1849344181543512).epsilon(1e-13));
  CHECK(ratio_A_pdf(0.01, 0.1) == doctest::Approx(2.4133249455854481).epsilon(1e-13));
  CHECK(ratio_A_cdf(0.2, 0.3) == doctest::Approx(0.38957379717956374).epsilon(1e-13));
  CHECK(ratio_A_cdf(0.6, 0.7) == doctest::Approx(0.62273722316356516).epsilon(1e-13));
  CHECK(ratio_A_cdf(0.01, 0.1) == doctest::Approx(0.38621228580688674).epsilon(1e-13));
}

TEST_CASE("ratio A is symmetric about one half") {
  for (double mu : {0.1, 0.3, 0.7, 0.9}) {
    for (double z : {0.01, 0.2, 0.37}) {
      CHECK(ratio_A_pdf(z, mu) == doctest::Approx(ratio_A_pdf(1.0 - z, mu)).epsilon(1e-12));
      CHECK(ratio_A_cdf(z, mu) + ratio_A_cdf(1.0 - z, mu) == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("ratio power law values") {
  CHECK(ratio_power_cdf(1.0, 0.5) == doctest::Approx(0.5));
  CHECK(ratio_power_cdf(0.5, 0.3) == doctest::Approx(0.32149562204371858).epsilon(1e-13));
  CHECK(ratio_power_cdf(4.0, 0.3) == doctest::Approx(0.81479986018493067).epsilon(1e-13));
  CHECK(ratio_power_cdf(2.0, 0.5) == doctest::Approx(0.70483276469913345).epsilon(1e-13));
  CHECK(ratio_power_pdf(0.5, 0.3) == doctest::Approx(0.46708052002450789).epsilon(1e-12));
  CHECK(ratio_power_pdf(4.0, 0.3) == doctest::Approx(0.039553153470623202).epsilon(1e-12));
  CHECK(ratio_power_pdf(1.0, 0.7) == doctest::Approx(0.44622737616461163).epsilon(1e-12));
  CHECK(ratio_power_pdf(2.0, 0.5) == doctest::Approx(0.12732395447351627).epsilon(1e-12));
}

TEST_CASE("ratio power median is one for every mu") {
  for (double mu : {0.1, 0.3, 0.5, 0.7, 0.9}) CHECK(ratio_power_cdf(1.0, mu) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("spider occupation law values") {
  CHECK(spider_pdf(0.1, 3) == doctest::Approx(1.6323583906861059).epsilon(1e-13));
  CHECK(spider_pdf(0.9, 3) == doctest::Approx(0.57353132645728054).epsilon(1e-13));
  CHECK(spider_pdf(0.25, 5) == doctest::Approx(0.61903595275429283).epsilon(1e-13));
  CHECK(spider_cdf(0.1, 3) == doctest::Approx(0.37433408362199764).epsilon(1e-13));
  CHECK(spider_cdf(0.9, 3) == doctest::Approx(0.89486308657749315).epsilon(1e-13));
  CHECK(spider_cdf(0.25, 5) == doctest::Approx(0.73985306170699402).epsilon(1e-13));
  CHECK(spider_cdf(0.1, 8) == doctest::Approx(0.7422378831816868).epsilon(1e-13));
}

TEST_CASE("spider law is not symmetric for n > 2") {
  CHECK(spider_pdf(0.1, 3) > 2.0 * spider_pdf(0.9, 3));
  CHECK(spider_cdf(0.1, 8) > 1.0 - spider_cdf(0.9, 8));
}

TEST_CASE("reductions to the arc-sine law") {
  for (int k = 1; k < 1000; ++k) {
    const double z = k / 1000.0;
    REQUIRE(std::abs(ratio_A_pdf(z, 0.5) - arcsine_pdf(z)) <= 1e-12);
    REQUIRE(std::abs(spider_pdf(z, 2) - arcsine_pdf(z)) <= 1e-12);
  }
}

TEST_CASE("transforms") {
  CHECK(stieltjes_transform(0.5, 0.3) == doctest::Approx(0.55179951866010909).epsilon(1e-14));
  CHECK(stieltjes_transform(2.0, 0.7) == doctest::Approx(0.38102426132988035).epsilon(1e-14));
  CHECK(stieltjes_transform(1.0, 0.4) == doctest::Approx(0.5));
  CHECK(mellin_transform(0.075, 0.3) == doctest::Approx(1.1004719987938112).epsilon(1e-13));
  CHECK(mellin_transform(0.35, 0.7) == doctest::Approx(1.2728664631262398).epsilon(1e-13));
  CHECK(fractional_moment(0.25, 0.3) == doctest::Approx(1.1678743184297157).epsilon(1e-13));
  CHECK(fractional_moment(0.5, 0.7) == doctest::Approx(1.2799394280870188).epsilon(1e-13));
  CHECK(fractional_moment(0.5, 0.5) == doctest::Approx(1.4464090846320771).epsilon(1e-13));
  CHECK_THROWS_AS(mellin_transform(0.4, 0.3), DomainError);
  CHECK_THROWS_AS(fractional_moment(1.0, 0.3), DomainError);
}

TEST_CASE("normalisation and means by quadrature") {
  CHECK(integrate_density(LawSpec::arcsine(), 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
  for (double mu : {0.1, 0.5, 0.9}) {
    CHECK(integrate_density(LawSpec::ratio_a(mu), 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(integrate_density(LawSpec::ratio_power(mu), 0.0, INFINITY) ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
  for (int n : {2, 3, 10}) {
    const double mean = integrate_against(LawSpec::spider(n), [](double z) { return z; }, 0.0, 1.0);
    CHECK(mean == doctest::Approx(1.0 / n).epsilon(1e-10));
  }
}

TEST_CASE("law specs validate their parameters") {
  CHECK_THROWS_AS(LawSpec::ratio_a(0.0).validate(), DomainError);
  CHECK_THROWS_AS(LawSpec::ratio_power(1.0).validate(), DomainError);
  CHECK_THROWS_AS(LawSpec::spider(1).validate(), DomainError);
  CHECK(LawSpec::spider(3).label() == "spider_occupation[n=3]");
}

TEST_CASE("density curve layout") {
  const auto c = make_density_curve(LawSpec::spider(3), 999);
  REQUIRE(c.grid.size() == 1001);
  CHECK(c.grid.front() == 0.0);
  CHECK(c.grid.back() == 1.0);
  CHECK(std::isinf(c.pdf_values.front()));
  CHECK(c.cdf_values.front() == 0.0);
  CHECK(c.cdf_values.back() == 1.0);
  for (std::size_t i = 1; i + 1 < c.grid.size(); ++i) {
    REQUIRE(c.pdf_values[i] > 0.0);
    REQUIRE(c.cdf_values[i] >= c.cdf_values[i - 1]);
  }
}
