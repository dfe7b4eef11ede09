#include <doctest.h>

#include <cmath>

#include "irreg/errors.hpp"
#include "irreg/generate.hpp"
#include "irreg/pipeline.hpp"

using namespace irreg;

TEST_SUITE("pipeline") {

TEST_CASE("presets") {
  PipelineParams base;
  base.slack = 4;
  auto r = apply_preset("reference", base);
  CHECK(r.b == 0.2);
  CHECK(r.eps == 0.05);
  CHECK(r.slack == 4);
  auto c1 = apply_preset("corollary1", base);
  CHECK(c1.b == 1.0);
  CHECK(c1.eps == doctest::Approx(1.0 / 12));
  auto c2 = apply_preset("corollary2", base, 0.9);
  CHECK(c2.b == doctest::Approx(0.05));
  CHECK(c2.eps == doctest::Approx(0.05));
  CHECK_THROWS_AS(apply_preset("corollary2", base, 0), ParameterError);
  CHECK_THROWS_AS(apply_preset("other", base), ParameterError);
}

TEST_CASE("strict range") {
  auto r = strict_range(20000, 0.2, 0.05);
  CHECK(r.lo == doctest::Approx(std::pow(std::log(20000.0), 2.8)));
  CHECK(r.hi == doctest::Approx(20000 / std::pow(std::log(20000.0), 0.65)));
  CHECK(r.contains(1000));
  CHECK_FALSE(r.contains(600));
  // ln^8 n > n everywhere below 1e9
  for (double n : {1e3, 1e5, 1e7, 1e9}) CHECK_FALSE(strict_range(n, 1.0, 1.0 / 12).nonempty());
}

TEST_CASE("corollary1 is refused in strict mode") {
  auto g = generate_random_regular(20000, 1000, 1);
  PipelineParams p = apply_preset("corollary1", PipelineParams{});
  p.mode = Mode::Strict;
  auto out = run_pipeline(g, p, 1);
  CHECK(out.status == PipelineOutcome::Status::Refused);
  CHECK(out.failure_condition == "strict_range");
  CHECK(*out.report.find("status") == "refused");
  CHECK(*out.report.find("strict_range.nonempty") == "false");
  CHECK_FALSE(out.partition);
}

TEST_CASE("parameter errors come before sampling") {
  PipelineParams p;
  auto dense = generate_random_regular(20, 7, 1);
  CHECK_THROWS_AS(run_pipeline(dense, p, 1), ParameterError);
  auto small = generate_random_regular(30, 3, 1);
  PipelineParams wide;
  wide.b = 1;
  wide.eps = 1;  // the correction window bound comes out at -1
  CHECK_THROWS_AS(run_pipeline(small, wide, 1), ParameterError);
  auto irregular = Graph::from_edges(3, {{0, 1}, {1, 2}});
  CHECK_THROWS_AS(run_pipeline(irregular, p, 1), ParameterError);
  PipelineParams strict_slack;
  strict_slack.mode = Mode::Strict;
  strict_slack.slack = 2;
  CHECK_THROWS_AS(run_pipeline(generate_random_regular(5000, 500, 1), strict_slack, 1),
                  ParameterError);
}

TEST_CASE("failures name the stage and condition and are reproducible") {
  auto g = generate_random_regular(5000, 500, 3);
  PipelineParams p;
  p.slack = 1e6;
  auto a = run_pipeline(g, p, 11);
  auto b = run_pipeline(g, p, 11);
  CHECK(a.report.to_text() == b.report.to_text());
  REQUIRE(a.status == PipelineOutcome::Status::Failed);
  CHECK(a.failure_stage == "omega_prime");
  CHECK(a.failure_condition == "delta_infeasible");
  CHECK(a.failure_witness.rfind("j=", 0) == 0);
  CHECK(*a.report.find("failure.stage") == "omega_prime");
  CHECK(*a.report.find("status") == "failed");
  CHECK(a.report.find("failure.detail.above_capacity"));
  CHECK(a.partition);
  CHECK(a.x);
  CHECK(a.report.lines().front().first == "status");
}

TEST_CASE("tight windows fail in the partition stage") {
  auto g = generate_random_regular(5000, 500, 3);
  PipelineParams p;
  p.max_retries = 3;
  auto out = run_pipeline(g, p, 11);
  REQUIRE(out.status == PipelineOutcome::Status::Failed);
  CHECK(out.failure_stage == "partition");
  CHECK((out.failure_condition == "1" || out.failure_condition == "2"));
  CHECK(*out.report.find("partition.attempts") == "3");
}

}  // TEST_SUITE
