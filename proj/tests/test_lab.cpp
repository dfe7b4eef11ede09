#include <doctest.h>

#include <cmath>

#include "irreg/errors.hpp"
#include "irreg/generate.hpp"
#include "irreg/lab.hpp"

using namespace irreg;

TEST_SUITE("concentration_lab") {

TEST_CASE("chernoff bounds") {
  auto zero = chernoff_bounds(1000, 0.5, 0);
  CHECK(zero.upper == 1.0);
  CHECK(zero.lower == 1.0);
  auto b = chernoff_bounds(1000, 0.5, 100);
  CHECK(b.upper == doctest::Approx(std::exp(-20.0 / 3.0)));
  CHECK(b.upper == doctest::Approx(1.2726e-3).epsilon(1e-3));
  CHECK(b.lower == doctest::Approx(std::exp(-10.0)));
  CHECK_THROWS_AS(chernoff_bounds(10, 0.5, 6), ParameterError);
  CHECK_THROWS_AS(chernoff_bounds(10, 0.0, 0), ParameterError);
  CHECK_THROWS_AS(chernoff_bounds(0, 0.5, 0), ParameterError);
}

TEST_CASE("tail estimates are deterministic and thread independent") {
  const double ts[] = {5, 10, 20};
  auto a = binomial_tail_estimates(200, 0.3, ts, 10000, 42, 1);
  auto b = binomial_tail_estimates(200, 0.3, ts, 10000, 42, 3);
  REQUIRE(a.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(a[i].above == b[i].above);
    CHECK(a[i].below == b[i].below);
    CHECK(chernoff_csv_row(200, 0.3, a[i]) == chernoff_csv_row(200, 0.3, b[i]));
  }
  // wider deviations are rarer
  CHECK(a[0].above >= a[1].above);
  CHECK(a[1].above >= a[2].above);
  CHECK(binomial_tail_estimate(200, 0.3, 10, 10000, 43).above != a[1].above);
}

TEST_CASE("t = np leaves only the all-success sample above") {
  auto e = binomial_tail_estimate(50, 0.5, 25, 20000, 7);
  CHECK(e.above == 0);
  CHECK(e.below == 0);
  CHECK(e.p_above == 0);
  CHECK(e.resolution == doctest::Approx(1.0 / 20000));
}

TEST_CASE("Monte Carlo stays under the bound") {
  auto e = binomial_tail_estimate(1000, 0.5, 100, 200000, 1);
  auto b = chernoff_bounds(1000, 0.5, 100);
  CHECK(e.p_above <= b.upper + 3 * e.se_above);
  CHECK(e.p_below <= b.lower + 3 * e.se_below);
  CHECK(chernoff_csv_header().rfind("n,p,t,trials,", 0) == 0);
}

TEST_CASE("condition rates with vacuous windows are zero") {
  PipelineParams p;
  p.slack = 1e6;
  auto r = condition_failure_rates(400, 20, p, 6, 3);
  REQUIRE(r.rates.size() == 6);
  for (const auto& c : r.rates) {
    CHECK(c.failures == 0);
    CHECK(c.rate == 0);
  }
  auto csv = r.to_csv();
  CHECK(csv.rfind("condition,n,d,b,eps,slack,trials,rate,stderr,failures,mean_excess\n", 0) == 0);
}

TEST_CASE("condition rates shrink as the slack grows") {
  auto g = generate_random_regular(600, 30, 2);
  PipelineParams p;
  double prev[6] = {2, 2, 2, 2, 2, 2};
  for (double slack : {1.0, 1.5, 3.0, 10.0}) {
    p.slack = slack;
    auto r = condition_failure_rates(600, 30, p, 12, 9, &g, 2);
    for (int i = 0; i < 6; ++i) {
      CHECK(r.rates[i].rate <= prev[i]);
      prev[i] = r.rates[i].rate;
    }
  }
  PipelineParams q;
  CHECK(condition_failure_rates(600, 30, q, 5, 9, &g, 1).to_csv() ==
        condition_failure_rates(600, 30, q, 5, 9, &g, 3).to_csv());
  CHECK_THROWS_AS(condition_failure_rates(601, 30, q, 5, 9, &g), ParameterError);
  CHECK_THROWS_AS(condition_failure_rates(600, 30, q, 0, 9, &g), ParameterError);
}

}  // TEST_SUITE
