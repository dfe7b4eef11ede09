#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "irreg/graph.hpp"
#include "irreg/params.hpp"
#include "irreg/partition.hpp"
#include "irreg/report.hpp"
#include "irreg/weighting.hpp"

namespace irreg {

/// Member {low, low + m} of the family S = {{2λm + a, (2λ+1)m + a}}, which
/// partitions the integers.
struct PairSet {
  std::int64_t low = 0;
  std::int64_t m = 1;

  std::int64_t high() const noexcept { return low + m; }
  bool contains(std::int64_t v) const noexcept { return v == low || v == low + m; }
  /// Residue a in [0, m).
  std::int64_t offset() const noexcept;
  /// λ with low = 2λm + a.
  std::int64_t lambda() const noexcept;

  friend bool operator==(const PairSet&, const PairSet&) = default;
};

/// The member of S containing `value`. Throws ParameterError if m <= 0.
PairSet pair_of(std::int64_t value, std::int64_t m);

/// What happened at the last two vertices of one component.
struct EndgameRecord {
  Vertex a = -1;  // last but one
  Vertex z = -1;  // last
  int du_a = 0;
  int du_z = 0;
  std::int64_t st_sets = 0;     // |S_t| when the component was reached
  std::int64_t edge_weight = 0; // chosen w on the edge az
  int congruent_sets = 0;       // max of the two congruence counts at w
  int w_tried = 0;
  std::int64_t sigma_a = 0;
  std::int64_t sigma_z = 0;
  bool z_used_az = false;
};

struct KkpDiagnostics {
  std::int64_t components = 0;
  std::int64_t isolated = 0;
  std::int64_t largest_component = 0;
  std::int64_t processed = 0;  // vertices through process_vertex
  std::int64_t min_du = 0;     // over non-isolated U-vertices
  /// min over process_vertex calls of (interval size) - 2|U_i|.
  std::optional<std::int64_t> min_option_margin;
  Vertex min_option_vertex = -1;
  std::vector<EndgameRecord> endgames;

  std::string to_text(std::string_view prefix = {}) const;
};

/// The coarse/fine correction pass over G[U], one vertex at a time.
///
/// Backward edges of the vertex being analyzed are its edges to analyzed
/// U-vertices, forward edges those to unanalyzed ones. A backward edge to u
/// may move by +m when sigma(u) is the lower element of Sigma_u, by -m
/// otherwise; forward edges take anything in [0, m].
///
/// The engine works on original vertex ids of `state.graph()` and assumes
/// whole components are processed before the next one starts.
class KkpEngine {
 public:
  KkpEngine(WeightingState& state, const VertexPartition& part, std::int64_t m, Mode mode);

  /// Adds m to every edge inside U (not counted as a modification).
  void initialize();
  /// Processes every component of G[U] in ascending order of its minimum
  /// vertex. Throws StageError when a vertex runs out of options.
  void run();

  /// Ordinary vertex: needs at least one forward edge.
  void process_vertex(Vertex v);
  /// Endgame for the last two vertices a (last but one) and z (last) of a
  /// component; a and z must be adjacent and every other U-neighbour of
  /// either already analyzed.
  void process_last_two(Vertex a, Vertex z);
  /// A component consisting of v alone.
  void process_isolated(Vertex v);

  bool analyzed(Vertex v) const { return assigned_[v] != kNone; }
  std::optional<PairSet> sigma_set(Vertex v) const;
  /// Pair sets assigned to at least two analyzed vertices, ascending.
  std::vector<PairSet> shared_sets() const;
  /// Number of S_t sets whose elements are congruent to r mod m.
  int congruent_count(std::int64_t r) const;
  const KkpDiagnostics& diagnostics() const noexcept { return diag_; }
  std::int64_t step() const noexcept { return m_; }

 private:
  static constexpr std::int64_t kNone = INT64_MIN;

  struct Move {
    EdgeId e;
    std::int64_t delta;
  };
  struct Undo {
    std::vector<std::tuple<EdgeId, std::int64_t, int>> edges;
    std::vector<Vertex> marked;
  };

  std::int64_t sigma(Vertex v) const { return state_->sigma(v); }
  bool at_low(Vertex u) const { return sigma(u) == assigned_[u]; }
  void apply(const std::vector<Move>& moves, Undo* undo);
  void mark(Vertex v, Undo* undo);
  void revert(const Undo& undo);
  /// True if applying `moves` and then marking the vertices `fresh` at
  /// their given values leaves every analyzed sigma distinct.
  bool collision_free(const std::vector<Move>& moves,
                      std::span<const std::pair<Vertex, std::int64_t>> fresh) const;

  struct Choice {
    std::int64_t value;
    std::vector<Move> moves;
  };
  /// Smallest admissible value of the coarse progression of v over the
  /// backward edges in `edges` (edge, neighbour), or nullopt.
  std::optional<Choice> endgame_choice(Vertex v, std::span<const std::pair<EdgeId, Vertex>> edges,
                                       const std::unordered_set<std::int64_t>& avoid_lows,
                                       bool strict_extremes);

  WeightingState* state_;
  const VertexPartition* part_;
  std::int64_t m_;
  Mode mode_;
  std::vector<std::int64_t> assigned_;  // low of Sigma_v or kNone
  // per class: low of Sigma -> number of analyzed vertices holding it
  std::array<std::unordered_map<std::int64_t, int>, VertexPartition::kClasses + 1> class_lows_;
  std::unordered_map<std::int64_t, std::vector<Vertex>> pair_members_;
  std::unordered_map<std::int64_t, int> sigma_count_;  // analyzed vertices only
  KkpDiagnostics diag_;
};

struct KkpResult {
  WeightingState state;
  KkpDiagnostics diagnostics;
};

/// Stage omega_2 from a stage omega_1 state. Throws StageError("kkp", ...)
/// with the vertex, its d_U and the threshold that was missed, or
/// ("kkp", "class_collision", ...) if two vertices of one class end with the
/// same sigma. Collisions across classes are left to separation_checks.
KkpResult run_kkp(WeightingState state, const VertexPartition& part, std::int64_t m, Mode mode);

/// (a) max over V_0 below min over U, (b) max over U_i below min over U_{i+1}
/// for consecutive non-empty classes, (c) sigma on V_0 equal to
/// `sigma_omega1`. Ids "a", "b", "c".
ConditionReport separation_checks(const WeightingState& state, const VertexPartition& part,
                                  std::span<const std::int64_t> sigma_omega1);

}  // namespace irreg
