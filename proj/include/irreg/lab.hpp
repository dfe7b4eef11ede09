#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "irreg/graph.hpp"
#include "irreg/params.hpp"

namespace irreg {

struct ChernoffBounds {
  double upper = 1;  // exp(-t^2 / (3np)) for Pr(BIN > np + t)
  double lower = 1;  // exp(-t^2 / (2np)) for Pr(BIN < np - t)
};

/// Throws ParameterError unless n >= 1, 0 < p < 1 and 0 <= t <= np.
ChernoffBounds chernoff_bounds(std::int64_t n, double p, double t);

struct TailEstimate {
  double t = 0;
  std::int64_t trials = 0;
  std::int64_t above = 0;  // samples with BIN > np + t
  std::int64_t below = 0;  // samples with BIN < np - t
  double p_above = 0;
  double p_below = 0;
  double se_above = 0;
  double se_below = 0;
  double resolution = 0;  // 1 / trials
};

/// Monte Carlo frequencies of both tails for every t in `ts`, from one set
/// of `trials` samples, each the sum of n Bernoulli(p) draws. Trials are cut
/// into fixed chunks seeded by derive_seed(seed, LabChunk, chunk), so the
/// result does not depend on `threads` (0 = hardware concurrency).
std::vector<TailEstimate> binomial_tail_estimates(std::int64_t n, double p,
                                                  std::span<const double> ts,
                                                  std::int64_t trials, std::uint64_t seed,
                                                  unsigned threads = 0);

TailEstimate binomial_tail_estimate(std::int64_t n, double p, double t, std::int64_t trials,
                                    std::uint64_t seed, unsigned threads = 0);

/// "n,p,t,trials,p_above,se_above,upper_bound,p_below,se_below,lower_bound"
std::string chernoff_csv_header();
std::string chernoff_csv_row(std::int64_t n, double p, const TailEstimate& e);

struct ConditionRate {
  std::string id;  // "1".."6"
  std::int64_t trials = 0;
  std::int64_t failures = 0;  // trials with at least one violation
  double rate = 0;
  double stderr_rate = 0;
  /// Mean over failing trials of the worst relative excess
  /// (measured - bound) / bound.
  double mean_excess = 0;
};

struct ConditionRates {
  std::int64_t n = 0;
  std::int64_t d = 0;
  PipelineParams params;
  std::int64_t trials = 0;
  std::vector<ConditionRate> rates;  // ids 1..6 in order

  const ConditionRate* find(std::string_view id) const;
  /// Header line plus one row per condition:
  /// condition,n,d,b,eps,slack,trials,rate,stderr,failures,mean_excess
  std::string to_csv(bool header = true) const;
};

/// Trial k draws a graph with derive_seed(seed, LabTrial, k) (unless `graph`
/// is given, then that graph is reused), a partition and an x sample, and
/// evaluates the windows 1..6 at params.slack. The samples do not depend on
/// the slack, so runs that differ only in slack see the same samples.
ConditionRates condition_failure_rates(std::int64_t n, std::int64_t d,
                                       const PipelineParams& params, std::int64_t trials,
                                       std::uint64_t seed, const Graph* graph = nullptr,
                                       unsigned threads = 0);

}  // namespace irreg
