#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "irreg/graph.hpp"
#include "irreg/labeling.hpp"
#include "irreg/weighting.hpp"

namespace irreg {

/// sigma(v) = sum of the weights of the edges at v. Throws InputError when
/// the weight vector does not have one entry per edge.
std::vector<std::int64_t> weighted_degrees(const Graph& g, std::span<const std::int64_t> w);

struct VerificationResult {
  bool irregular = true;
  /// Lexicographically smallest (u, v), u < v, with sigma(u) == sigma(v).
  std::optional<std::pair<Vertex, Vertex>> witness;
  std::int64_t witness_sigma = 0;
  std::int64_t min_label = 0;
  std::int64_t max_label = 0;
  std::int64_t sigma_min = 0;
  std::int64_t sigma_max = 0;
  std::int64_t distinct_sigma = 0;
  /// Filled by finalize_and_check only.
  std::optional<std::int64_t> label_cap;
  bool bound_ok = true;

  std::string to_text(std::string_view prefix = {}) const;
};

/// Global pairwise distinctness of sigma over all vertices.
VerificationResult is_irregular(const Graph& g, std::span<const std::int64_t> w);

struct FinalResult {
  WeightingState state;
  VerificationResult verification;
};

/// Stage omega_3 = omega_2 + 1 on every edge, then is_irregular plus the
/// label cap check (max label <= budgets.label_cap()). Throws
/// InvariantError if some omega_2 weight is negative.
FinalResult finalize_and_check(WeightingState state, const Budgets& budgets);

/// ceil((n + d - 1) / d). Throws ParameterError if d < 1.
std::int64_t regular_lower_bound(std::int64_t n, std::int64_t d);

struct ExactResult {
  /// s(G) if it is at most k_max.
  std::optional<int> strength;
  int k_min = 1;  // where the search started
  int k_max = 0;
  std::vector<std::int64_t> witness;  // per EdgeId, empty when not found
  std::int64_t nodes = 0;             // search nodes visited

  std::string to_text(std::string_view prefix = {}) const;
};

/// Least k such that some weighting E -> {1..k} is irregular, by iterative
/// deepening from the lower bound (the regular bound for regular graphs,
/// 1 otherwise) with backtracking. Throws DomainError for graphs with an
/// isolated edge or two isolated vertices, ParameterError when the graph
/// has more than `max_edges` edges or k_max < 1.
ExactResult exact_strength(const Graph& g, int k_max, std::size_t max_edges = 20);

}  // namespace irreg
