#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "irreg/graph.hpp"
#include "irreg/params.hpp"
#include "irreg/report.hpp"

namespace irreg {

/// Split of V into the small part U = U_1 u ... u U_7 and the rest V_0, with
/// per-vertex neighbour counts into every part.
///
/// Tag 0 means V_0, tags 1..7 the classes U_1..U_7.
class VertexPartition {
 public:
  static constexpr int kClasses = 7;

  VertexPartition() = default;
  /// Throws ParameterError if tags.size() != n or a tag exceeds 7.
  static VertexPartition from_tags(const Graph& g, std::vector<std::uint8_t> tags);

  Vertex order() const noexcept { return static_cast<Vertex>(tags_.size()); }
  int tag(Vertex v) const noexcept { return tags_[v]; }
  bool in_u(Vertex v) const noexcept { return tags_[v] != 0; }
  std::span<const std::uint8_t> tags() const noexcept { return tags_; }

  /// |U_i| for i in 1..7; class_size(0) is n_0.
  std::int64_t class_size(int i) const noexcept { return sizes_[i]; }
  std::int64_t u_size() const noexcept;
  std::int64_t v0_size() const noexcept { return sizes_[0]; }

  /// d_{U_i}(v) for i in 1..7; d_class(v, 0) is d_0(v).
  int d_class(Vertex v, int i) const noexcept { return counts_[v][i]; }
  int d0(Vertex v) const noexcept { return counts_[v][0]; }
  int d_u(Vertex v) const noexcept;

  std::vector<Vertex> members(int tag) const;
  std::vector<Vertex> u_vertices() const;

 private:
  std::vector<std::uint8_t> tags_;
  std::array<std::int64_t, kClasses + 1> sizes_{};
  std::vector<std::array<std::int32_t, kClasses + 1>> counts_;
};

/// Probability 1/ln^{b+eps} n with which a vertex enters U. Throws
/// ParameterError when it is not in (0, 1).
double u_probability(Vertex n, double b, double eps);

/// Every vertex joins U independently with u_probability(); each U-vertex then
/// draws its class uniformly from 1..7. Deterministic per seed. Requires a
/// regular graph with n >= 3.
VertexPartition sample_partition(const Graph& g, const PipelineParams& p, std::uint64_t seed);

/// Evaluates the class-size window ("1") for every class and the
/// neighbour-count window ("2") for every (v, i), right-hand sides scaled by
/// p.slack. Pure.
ConditionReport check_partition(const Graph& g, const VertexPartition& part,
                                const PipelineParams& p);

/// Outcome of a Las Vegas loop: `value` is set on success; `report` belongs
/// to the accepted sample or, on failure, the last rejected one.
template <class T>
struct Attempt {
  std::optional<T> value;
  ConditionReport report;
  int attempts = 0;

  bool ok() const noexcept { return value.has_value(); }
};

/// Samples with seeds derive_seed(seed, Partition, k), k = 0, 1, ..., until
/// check_partition passes or p.max_retries samples were rejected.
Attempt<VertexPartition> find_partition(const Graph& g, const PipelineParams& p,
                                        std::uint64_t seed);

}  // namespace irreg
