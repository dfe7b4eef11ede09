#include "irreg/graph.hpp"

#include <algorithm>
#include <string>

#include <fmt/format.h>

#include "irreg/errors.hpp"

namespace irreg {

Graph Graph::from_edges(Vertex n, std::vector<Edge> edges) {
  if (n < 0) throw ParameterError(fmt::format("negative vertex count {}", n));
  for (auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      throw ParameterError(
          fmt::format("edge {}-{} out of range for {} vertices", e.u, e.v, n));
    }
    if (e.u == e.v) throw ParameterError(fmt::format("self-loop at vertex {}", e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) {
    throw ParameterError(fmt::format("parallel edge {}-{}", dup->u, dup->v));
  }
  if (edges.size() > static_cast<std::size_t>(INT32_MAX)) {
    throw ParameterError("too many edges");
  }

  Graph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& e : g.edges_) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (Vertex v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.nbrs_.resize(2 * g.edges_.size());
  g.inc_.resize(2 * g.edges_.size());
  std::vector<std::int64_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted by (u, v), so for a fixed vertex x the partners smaller
  // than x arrive ascending before the larger ones: lists come out sorted.
  for (std::size_t i = 0; i < g.edges_.size(); ++i) {
    const auto& e = g.edges_[i];
    auto id = static_cast<EdgeId>(i);
    g.nbrs_[fill[e.u]] = e.v;
    g.inc_[fill[e.u]++] = id;
    g.nbrs_[fill[e.v]] = e.u;
    g.inc_[fill[e.v]++] = id;
  }
  if (n > 0) {
    int d0 = g.degree(0);
    bool regular = true;
    for (Vertex v = 1; v < n && regular; ++v) regular = g.degree(v) == d0;
    if (regular) g.regular_ = d0;
  }
  return g;
}

std::optional<EdgeId> Graph::find_edge(Vertex a, Vertex b) const {
  if (a < 0 || b < 0 || a >= n_ || b >= n_) return std::nullopt;
  if (degree(a) > degree(b)) std::swap(a, b);
  auto nb = neighbors(a);
  auto it = std::lower_bound(nb.begin(), nb.end(), b);
  if (it == nb.end() || *it != b) return std::nullopt;
  return incident(a)[static_cast<std::size_t>(it - nb.begin())];
}

EdgeId Graph::edge_id(Vertex a, Vertex b) const {
  auto e = find_edge(a, b);
  if (!e) throw ParameterError(fmt::format("no edge {}-{}", a, b));
  return *e;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> subset) {
  InducedSubgraph out;
  out.to_new.assign(static_cast<std::size_t>(g.order()), -1);
  for (Vertex v : subset) {
    if (v < 0 || v >= g.order()) {
      throw ParameterError(fmt::format("vertex {} out of range for {} vertices", v,
                                       g.order()));
    }
    out.to_new[v] = 0;
  }
  for (Vertex v = 0; v < g.order(); ++v) {
    if (out.to_new[v] == 0) {
      out.to_new[v] = static_cast<Vertex>(out.to_old.size());
      out.to_old.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (out.to_new[e.u] >= 0 && out.to_new[e.v] >= 0) {
      edges.push_back({out.to_new[e.u], out.to_new[e.v]});
    }
  }
  out.graph = Graph::from_edges(static_cast<Vertex>(out.to_old.size()), std::move(edges));
  return out;
}

std::vector<ComponentOrdering> components_with_order(const Graph& g) {
  std::vector<ComponentOrdering> out;
  std::vector<Vertex> parent(static_cast<std::size_t>(g.order()), -2);
  std::vector<Vertex> queue;
  for (Vertex root = 0; root < g.order(); ++root) {
    if (parent[root] != -2) continue;
    queue.clear();
    queue.push_back(root);
    parent[root] = -1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex v = queue[head];
      for (Vertex w : g.neighbors(v)) {
        if (parent[w] == -2) {
          parent[w] = v;
          queue.push_back(w);
        }
      }
    }
    ComponentOrdering comp;
    comp.order.assign(queue.rbegin(), queue.rend());
    comp.forward.reserve(comp.order.size());
    for (Vertex v : comp.order) comp.forward.push_back(parent[v]);
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace irreg
