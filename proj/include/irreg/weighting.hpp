#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "irreg/graph.hpp"

namespace irreg {

/// Construction stages of the edge weighting, in order.
enum class Stage { Omega0 = 0, Omega1 = 1, Omega2 = 2, Omega3 = 3 };

std::string_view to_string(Stage s) noexcept;

/// Integer edge weights over a fixed graph together with the weighted degrees
/// they induce. The sigma cache is maintained incrementally and always
/// equals the sum of incident weights.
class WeightingState {
 public:
  explicit WeightingState(const Graph& g, Stage stage = Stage::Omega0);

  const Graph& graph() const noexcept { return *g_; }
  Stage stage() const noexcept { return stage_; }
  /// Moves to a later stage. Throws InvariantError on a backward move.
  void advance(Stage next);

  std::int64_t weight(EdgeId e) const { return w_[static_cast<std::size_t>(e)]; }
  std::span<const std::int64_t> weights() const noexcept { return w_; }
  std::int64_t sigma(Vertex v) const { return sigma_[static_cast<std::size_t>(v)]; }
  std::span<const std::int64_t> sigmas() const noexcept { return sigma_; }

  /// Number of add() calls with a non-zero delta on this edge.
  int modifications(EdgeId e) const { return mods_[static_cast<std::size_t>(e)]; }

  /// Sets a weight without counting a modification (stage initialization).
  void assign(EdgeId e, std::int64_t w);
  /// Adds to a weight; non-zero deltas count as one modification.
  void add(EdgeId e, std::int64_t delta);
  /// Puts back an earlier weight and modification count (undo).
  void restore(EdgeId e, std::int64_t w, int modifications);

  /// Recomputes every sigma from scratch and compares with the cache.
  bool sigma_consistent() const;

 private:
  const Graph* g_;
  Stage stage_;
  std::vector<std::int64_t> w_;
  std::vector<std::int64_t> sigma_;
  std::vector<std::uint8_t> mods_;
};

/// Header fields written as "# key=value ..." above the CSV body.
using CsvHeader = std::vector<std::pair<std::string, std::string>>;

/// "u,v,weight" rows in edge order, preceded by the header comment line and
/// a column line.
std::string write_weights_csv(const Graph& g, std::span<const std::int64_t> weights,
                              const CsvHeader& header = {});

/// Parses the CSV format above into a per-EdgeId vector. '#' lines and the
/// column line are skipped. Throws ParseError on malformed rows and
/// InputError when a row names a non-edge, repeats an edge, or an edge has
/// no weight.
std::vector<std::int64_t> read_weights_csv(const Graph& g, std::string_view text);

}  // namespace irreg
