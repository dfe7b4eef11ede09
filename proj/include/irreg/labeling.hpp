#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "irreg/graph.hpp"
#include "irreg/params.hpp"
#include "irreg/partition.hpp"
#include "irreg/report.hpp"
#include "irreg/weighting.hpp"

namespace irreg {

/// Random positions x_v in [0, 1) for the vertices of V_0.
///
/// `order` lists V_0 ascending by (x, vertex id); `rank[v]` is the 1-based
/// position of v in it (0 for U-vertices). `l_count[v]` is the number of
/// V_0-vertices with strictly smaller x; `r_count[v]` the number of
/// V_0-neighbours u with x_u + x_v >= 1.
struct XAssignment {
  std::vector<double> x;  // per vertex, NaN on U
  std::vector<Vertex> order;
  std::vector<std::int64_t> rank;
  std::vector<std::int64_t> l_count;
  std::vector<std::int64_t> r_count;

  /// The same predicate drives R_v and the initial heavy edges inside V_0;
  /// the sum form is symmetric in u and v under floating point.
  bool heavy(Vertex u, Vertex v) const { return x[u] + x[v] >= 1.0; }

  /// Derives order, ranks and counts from x (entries on U are ignored).
  static XAssignment build(const Graph& g, const VertexPartition& part, std::vector<double> x);
  /// Explicit R_v as a neighbour list, for checks.
  std::vector<Vertex> r_set(const Graph& g, const VertexPartition& part, Vertex v) const;
};

/// Draws x_v uniformly for v in V_0 (ascending vertex order). Throws
/// ParameterError if V_0 is empty.
XAssignment sample_x(const Graph& g, const VertexPartition& part, std::uint64_t seed);

/// Position and neighbourhood windows "3".."6" for every V_0-vertex, with
/// the small-x threshold 1/ln^{2b+3eps} n selecting which pair applies.
ConditionReport check_x_conditions(const VertexPartition& part, const XAssignment& xa,
                                   const PipelineParams& p);

/// Las Vegas loop over sample_x with seeds derive_seed(seed, Labels, k).
Attempt<XAssignment> find_x(const Graph& g, const VertexPartition& part,
                            const PipelineParams& p, std::uint64_t seed);

/// Integer step sizes and offsets derived from (n, d, b, eps).
struct Budgets {
  std::int64_t n = 0;
  std::int64_t d = 0;
  double b = 0;
  double eps = 0;

  std::int64_t base = 0;         // ceil(n/d)
  std::int64_t class_step = 0;   // ceil(n/(d ln^b n))
  std::int64_t fine_cap = 0;     // ceil(n/(d ln^{b+eps} n))
  std::int64_t kkp_step = 0;     // floor(n/(3d))
  std::int64_t target_base = 0;  // V_0 targets are target_base + j
  std::int64_t delta_bound = 0;  // expected upper end of the V_0 corrections

  /// Roundings whose argument was within 1e-9 of an integer; each entry
  /// names the field and both candidate values.
  std::vector<std::string> near_integer;

  /// Largest final label the construction allows:
  /// base + 7 class_step + fine_cap + 1.
  std::int64_t label_cap() const noexcept { return base + 7 * class_step + fine_cap + 1; }
  /// (n/d)(1 + 8/ln^b n).
  double theorem_cap() const;

  std::string to_text(std::string_view prefix = {}) const;
};

/// Throws ParameterError unless n >= 3, 1 <= d < n, b > 0, eps > 0 and
/// floor(n/(3d)) >= 1. delta_bound may come out below 1 for small n; the
/// pipeline rejects that separately.
Budgets compute_budgets(std::int64_t n, std::int64_t d, double b, double eps);

/// Stage omega_0: inside V_0 an edge weighs `base` if heavy and 0 otherwise;
/// an edge from V_0 to U_i weighs base + i*class_step; edges inside U weigh 0.
WeightingState initial_weighting(const Graph& g, const VertexPartition& part,
                                 const XAssignment& xa, const Budgets& budgets);

struct DeltaViolation {
  std::int64_t j = 0;
  Vertex vertex = -1;
  std::int64_t delta = 0;
  std::int64_t capacity = 0;
};

/// Per-vertex corrections needed on V_0 and how they compare with the
/// available capacity d_U(v)*fine_cap, plus the V_0-below-U separation.
struct FeasibilityReport {
  std::int64_t vertices = 0;
  std::int64_t delta_min = 0;
  std::int64_t delta_max = 0;
  std::int64_t capacity_min = 0;
  std::int64_t below_zero = 0;
  std::int64_t above_capacity = 0;
  std::int64_t in_expected_window = 0;  // 1 <= delta <= delta_bound
  std::optional<DeltaViolation> first_violation;

  bool separation_checked = false;
  bool separated = true;
  std::int64_t max_v0_sigma = 0;
  std::int64_t min_u_sigma = 0;
  Vertex min_u_vertex = -1;

  bool feasible() const noexcept { return !first_violation.has_value(); }
  std::string to_text(std::string_view prefix = {}) const;
};

struct OmegaPrimeResult {
  WeightingState state;
  FeasibilityReport report;
};

/// Stage omega_1. For the j-th vertex of V_0 the missing amount
/// delta_j = target_base + j - sigma(v_j) is spread over its edges to U in
/// ascending neighbour order, each edge taking at most fine_cap.
///
/// Throws StageError("omega_prime", "delta_infeasible", ...) naming the first
/// j with delta_j < 0 or delta_j > capacity; the full FeasibilityReport is in
/// the error details. A violated V_0-below-U separation is fatal in strict
/// mode (condition "sigma1vu") and recorded as a warning otherwise.
OmegaPrimeResult assign_omega_prime(WeightingState state, const VertexPartition& part,
                                    const XAssignment& xa, const Budgets& budgets,
                                    Mode mode);

/// The greedy split used above: `delta` over `edges` slots of at most `cap`.
std::vector<std::int64_t> greedy_fill(std::int64_t delta, std::size_t edges, std::int64_t cap);

}  // namespace irreg
