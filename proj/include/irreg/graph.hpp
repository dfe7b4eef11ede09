#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace irreg {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;

/// Undirected edge stored as (min, max).
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Edges are kept sorted lexicographically; an edge's index in that order is
/// its EdgeId. Adjacency is stored CSR-style with neighbours ascending and a
/// parallel array of incident edge ids, so weight maps can be plain vectors
/// indexed by EdgeId.
class Graph {
 public:
  Graph() = default;

  /// Validates and normalizes `edges` (any orientation, any order).
  /// Throws ParameterError on self-loops, parallel edges or bad ids.
  static Graph from_edges(Vertex n, std::vector<Edge> edges);

  Vertex order() const noexcept { return n_; }
  std::size_t size() const noexcept { return edges_.size(); }

  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {nbrs_.data() + offsets_[v], nbrs_.data() + offsets_[v + 1]};
  }
  /// Edge ids parallel to neighbors(v).
  std::span<const EdgeId> incident(Vertex v) const noexcept {
    return {inc_.data() + offsets_[v], inc_.data() + offsets_[v + 1]};
  }
  int degree(Vertex v) const noexcept {
    return static_cast<int>(offsets_[v + 1] - offsets_[v]);
  }

  /// Common degree if every vertex has it (empty graph: nullopt).
  std::optional<int> regular_degree() const noexcept { return regular_; }

  std::optional<EdgeId> find_edge(Vertex a, Vertex b) const;
  bool adjacent(Vertex a, Vertex b) const { return find_edge(a, b).has_value(); }
  /// Like find_edge but throws ParameterError when absent.
  EdgeId edge_id(Vertex a, Vertex b) const;

  bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

 private:
  Vertex n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::int64_t> offsets_{0};
  std::vector<Vertex> nbrs_;
  std::vector<EdgeId> inc_;
  std::optional<int> regular_;
};

struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_old;  // new id -> old id (ascending)
  std::vector<Vertex> to_new;  // old id -> new id, -1 if not in the subset
};

/// G[subset]. New ids follow ascending old ids. Duplicates in `subset` are
/// ignored; out-of-range ids throw ParameterError.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> subset);

/// One connected component arranged so that every vertex but the last has a
/// neighbour later in the sequence.
struct ComponentOrdering {
  std::vector<Vertex> order;
  /// forward[j] is a neighbour of order[j] placed after position j; -1 for
  /// the last vertex.
  std::vector<Vertex> forward;

  std::size_t size() const noexcept { return order.size(); }
};

/// Components in ascending order of their minimum vertex. Each ordering is a
/// BFS from the minimum vertex (neighbours visited ascending), reversed; the
/// forward neighbour of a vertex is its BFS parent.
std::vector<ComponentOrdering> components_with_order(const Graph& g);

}  // namespace irreg
