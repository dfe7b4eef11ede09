#include "irreg/verify.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "irreg/errors.hpp"

namespace irreg {

std::vector<std::int64_t> weighted_degrees(const Graph& g, std::span<const std::int64_t> w) {
  if (w.size() != g.size()) {
    throw InputError(fmt::format("{} weights for {} edges", w.size(), g.size()));
  }
  std::vector<std::int64_t> s(static_cast<std::size_t>(g.order()), 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& e = g.edge(static_cast<EdgeId>(i));
    s[e.u] += w[i];
    s[e.v] += w[i];
  }
  return s;
}

std::string VerificationResult::to_text(std::string_view prefix) const {
  std::string out;
  auto line = [&](std::string_view k, auto v) { out += fmt::format("{}{}={}\n", prefix, k, v); };
  line("irregular", irregular ? "true" : "false");
  if (witness) {
    line("witness", fmt::format("{},{}", witness->first, witness->second));
    line("witness_sigma", witness_sigma);
  }
  line("min_label", min_label);
  line("max_label", max_label);
  line("sigma_min", sigma_min);
  line("sigma_max", sigma_max);
  line("distinct_sigma", distinct_sigma);
  if (label_cap) {
    line("label_cap", *label_cap);
    line("bound_ok", bound_ok ? "true" : "false");
  }
  return out;
}

VerificationResult is_irregular(const Graph& g, std::span<const std::int64_t> w) {
  auto s = weighted_degrees(g, w);
  VerificationResult r;
  if (!w.empty()) {
    auto [lo, hi] = std::minmax_element(w.begin(), w.end());
    r.min_label = *lo;
    r.max_label = *hi;
  }
  std::vector<Vertex> idx(s.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](Vertex a, Vertex b) { return s[a] < s[b] || (s[a] == s[b] && a < b); });
  if (!idx.empty()) {
    r.sigma_min = s[idx.front()];
    r.sigma_max = s[idx.back()];
  }
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i > 0 && s[idx[i]] == s[idx[i - 1]]) {
      // idx[i-1] is the smallest id of its run when it starts the run
      const bool run_start = i == 1 || s[idx[i - 2]] != s[idx[i]];
      if (run_start && (!r.witness || idx[i - 1] < r.witness->first)) {
        r.witness = std::pair{idx[i - 1], idx[i]};
        r.witness_sigma = s[idx[i]];
      }
    } else {
      ++r.distinct_sigma;
    }
  }
  r.irregular = !r.witness.has_value();
  return r;
}

FinalResult finalize_and_check(WeightingState state, const Budgets& budgets) {
  if (state.stage() != Stage::Omega2) throw InvariantError("finalize expects a stage omega2 state");
  for (EdgeId e = 0; e < static_cast<EdgeId>(state.graph().size()); ++e) {
    if (state.weight(e) < 0) {
      const auto& ed = state.graph().edge(e);
      throw InvariantError(
          fmt::format("omega2({}-{}) = {} is negative", ed.u, ed.v, state.weight(e)));
    }
    state.assign(e, state.weight(e) + 1);
  }
  state.advance(Stage::Omega3);
  auto v = is_irregular(state.graph(), state.weights());
  v.label_cap = budgets.label_cap();
  v.bound_ok = v.max_label <= *v.label_cap;
  return {std::move(state), std::move(v)};
}

std::int64_t regular_lower_bound(std::int64_t n, std::int64_t d) {
  if (d < 1) throw ParameterError(fmt::format("lower bound needs d >= 1, got {}", d));
  return (n + d - 1 + d - 1) / d;
}

std::string ExactResult::to_text(std::string_view prefix) const {
  std::string out;
  auto line = [&](std::string_view k, auto v) { out += fmt::format("{}{}={}\n", prefix, k, v); };
  if (strength) {
    line("strength", *strength);
  } else {
    line("strength", fmt::format(">{}", k_max));
  }
  line("k_min", k_min);
  line("k_max", k_max);
  line("nodes", nodes);
  return out;
}

namespace {

class ExactSearch {
 public:
  ExactSearch(const Graph& g, int k) : g_(g), k_(k) {
    const auto m = g.size();
    order_.resize(m);
    std::iota(order_.begin(), order_.end(), 0);
    auto key = [&](EdgeId e) {
      const auto& ed = g.edge(e);
      return std::min(g.degree(ed.u), g.degree(ed.v));
    };
    std::stable_sort(order_.begin(), order_.end(),
                     [&](EdgeId a, EdgeId b) { return key(a) < key(b); });
    std::vector<std::size_t> last(static_cast<std::size_t>(g.order()), 0);
    std::vector<bool> has(static_cast<std::size_t>(g.order()), false);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& ed = g.edge(order_[i]);
      for (Vertex x : {ed.u, ed.v}) last[x] = i, has[x] = true;
    }
    completes_.resize(m);
    for (Vertex v = 0; v < g.order(); ++v) {
      if (has[v]) completes_[last[v]].push_back(v);
    }
    int maxdeg = 0;
    for (Vertex v = 0; v < g.order(); ++v) maxdeg = std::max(maxdeg, g.degree(v));
    used_.assign(static_cast<std::size_t>(maxdeg) * k + 1, 0);
    // degree-0 vertices are complete from the start with sigma 0
    for (Vertex v = 0; v < g.order(); ++v) {
      if (!has[v]) ++used_[0];
    }
    sigma_.assign(static_cast<std::size_t>(g.order()), 0);
    w_.assign(m, 0);
  }

  bool solve() { return step(0); }
  const std::vector<std::int64_t>& weights() const { return w_; }
  std::int64_t nodes() const { return nodes_; }

 private:
  bool step(std::size_t i) {
    ++nodes_;
    if (i == order_.size()) return true;
    const EdgeId e = order_[i];
    const auto& ed = g_.edge(e);
    for (int x = 1; x <= k_; ++x) {
      w_[e] = x;
      sigma_[ed.u] += x;
      sigma_[ed.v] += x;
      bool ok = true;
      std::size_t done = 0;
      for (Vertex v : completes_[i]) {
        if (used_[sigma_[v]]++ > 0) ok = false;
        ++done;
      }
      if (ok && step(i + 1)) return true;
      for (std::size_t j = 0; j < done; ++j) --used_[sigma_[completes_[i][j]]];
      sigma_[ed.u] -= x;
      sigma_[ed.v] -= x;
    }
    w_[e] = 0;
    return false;
  }

  const Graph& g_;
  int k_;
  std::vector<EdgeId> order_;
  std::vector<std::vector<Vertex>> completes_;
  std::vector<int> used_;
  std::vector<std::int64_t> sigma_;
  std::vector<std::int64_t> w_;
  std::int64_t nodes_ = 0;
};

}  // namespace

ExactResult exact_strength(const Graph& g, int k_max, std::size_t max_edges) {
  if (k_max < 1) throw ParameterError(fmt::format("k_max must be >= 1, got {}", k_max));
  if (g.size() > max_edges) {
    throw ParameterError(
        fmt::format("exact search is limited to {} edges, graph has {}", max_edges, g.size()));
  }
  int isolated = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (g.degree(v) == 0) ++isolated;
    if (g.degree(v) == 1 && g.degree(g.neighbors(v)[0]) == 1) {
      throw DomainError(fmt::format("irregularity strength undefined: isolated edge {}-{}", v,
                                    g.neighbors(v)[0]));
    }
  }
  if (isolated >= 2) {
    throw DomainError(
        fmt::format("irregularity strength undefined: {} isolated vertices", isolated));
  }

  ExactResult r;
  r.k_max = k_max;
  if (auto d = g.regular_degree(); d && *d >= 1) {
    r.k_min = static_cast<int>(regular_lower_bound(g.order(), *d));
  }
  for (int k = r.k_min; k <= k_max; ++k) {
    ExactSearch search(g, k);
    const bool found = search.solve();
    r.nodes += search.nodes();
    if (found) {
      r.strength = k;
      r.witness = search.weights();
      break;
    }
  }
  return r;
}

}  // namespace irreg
