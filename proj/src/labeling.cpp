#include "irreg/labeling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "irreg/errors.hpp"
#include "irreg/rng.hpp"

namespace irreg {

namespace {

constexpr long double kNearInteger = 1e-9L;

long double ln_pow_l(std::int64_t n, long double e) {
  return std::pow(std::log(static_cast<long double>(n)), e);
}

// ceil (or floor) of q, recording the field when q sits within 1e-9 of an
// integer and a rounding error could flip the result.
std::int64_t round_guarded(long double q, bool up, std::string_view name,
                           std::vector<std::string>& flags) {
  const long double nearest = std::round(q);
  const auto chosen = static_cast<std::int64_t>(up ? std::ceil(q) : std::floor(q));
  if (std::fabs(q - nearest) < kNearInteger) {
    const auto k = static_cast<std::int64_t>(nearest);
    const auto other = up ? (chosen == k ? k + 1 : k) : (chosen == k ? k - 1 : k);
    flags.push_back(fmt::format("{}:{}:{}/{}", name, static_cast<double>(q),
                                std::min(chosen, other), std::max(chosen, other)));
  }
  return chosen;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace

XAssignment XAssignment::build(const Graph& g, const VertexPartition& part,
                               std::vector<double> x) {
  const auto n = static_cast<std::size_t>(g.order());
  if (x.size() != n || part.order() != g.order()) {
    throw ParameterError("x vector and partition must cover the graph");
  }
  XAssignment xa;
  xa.rank.assign(n, 0);
  xa.l_count.assign(n, 0);
  xa.r_count.assign(n, 0);
  for (Vertex v = 0; v < g.order(); ++v) {
    if (part.in_u(v)) {
      x[v] = std::numeric_limits<double>::quiet_NaN();
    } else {
      xa.order.push_back(v);
    }
  }
  std::sort(xa.order.begin(), xa.order.end(),
            [&](Vertex a, Vertex b) { return x[a] < x[b] || (x[a] == x[b] && a < b); });
  std::int64_t first_of_run = 0;
  for (std::size_t j = 0; j < xa.order.size(); ++j) {
    Vertex v = xa.order[j];
    if (j > 0 && x[xa.order[j - 1]] < x[v]) first_of_run = static_cast<std::int64_t>(j);
    xa.rank[v] = static_cast<std::int64_t>(j) + 1;
    xa.l_count[v] = first_of_run;
  }
  xa.x = std::move(x);
  for (Vertex v : xa.order) {
    std::int64_t r = 0;
    for (Vertex u : g.neighbors(v)) {
      if (!part.in_u(u) && xa.heavy(u, v)) ++r;
    }
    xa.r_count[v] = r;
  }
  return xa;
}

std::vector<Vertex> XAssignment::r_set(const Graph& g, const VertexPartition& part,
                                       Vertex v) const {
  std::vector<Vertex> out;
  if (part.in_u(v)) return out;
  for (Vertex u : g.neighbors(v)) {
    if (!part.in_u(u) && heavy(u, v)) out.push_back(u);
  }
  return out;
}

XAssignment sample_x(const Graph& g, const VertexPartition& part, std::uint64_t seed) {
  if (part.v0_size() == 0) throw ParameterError("V_0 is empty");
  Rng rng(seed);
  std::vector<double> x(static_cast<std::size_t>(g.order()), 0.0);
  for (Vertex v = 0; v < g.order(); ++v) {
    if (!part.in_u(v)) x[v] = unit_uniform(rng);
  }
  return XAssignment::build(g, part, std::move(x));
}

ConditionReport check_x_conditions(const VertexPartition& part, const XAssignment& xa,
                                   const PipelineParams& p) {
  const double n = part.order();
  const double n0m1 = static_cast<double>(part.v0_size()) - 1;
  const double tau = 1.0 / ln_pow(n, 2 * p.b + 3 * p.eps);
  const double fine = ln_pow(n, 2 * p.b + 4 * p.eps);
  const double tail = ln_pow(n, 4 * p.b + 7 * p.eps);

  ConditionTally c3("3"), c4("4"), c5("5"), c6("6");
  for (Vertex v : xa.order) {
    const double x = xa.x[v];
    const double l = static_cast<double>(xa.l_count[v]);
    const double r = static_cast<double>(xa.r_count[v]);
    const double d0 = part.d0(v);
    if (x >= tau) {
      double dev = std::abs(l - x * n0m1), bound = p.slack * x * n0m1 / fine;
      if (c3.observe(dev, bound)) {
        c3.set_worst(fmt::format("v={}", v),
                     fmt::format("x={} |L_v|={} |{} - {}| = {} vs bound {}", x, l, l,
                                 x * n0m1, dev, bound));
      }
      dev = std::abs(r - x * d0);
      bound = p.slack * x * d0 / fine;
      if (c5.observe(dev, bound)) {
        c5.set_worst(fmt::format("v={}", v),
                     fmt::format("x={} |R_v|={} d_0={} |{} - {}| = {} vs bound {}", x, r, d0,
                                 r, x * d0, dev, bound));
      }
    } else {
      double bound = p.slack * (n0m1 * tau + n0m1 / tail);
      if (c4.observe(l, bound)) {
        c4.set_worst(fmt::format("v={}", v),
                     fmt::format("x={} |L_v|={} vs bound {}", x, l, bound));
      }
      bound = p.slack * (d0 * tau + d0 / tail);
      if (c6.observe(r, bound)) {
        c6.set_worst(fmt::format("v={}", v),
                     fmt::format("x={} |R_v|={} d_0={} vs bound {}", x, r, d0, bound));
      }
    }
  }
  ConditionReport report;
  report.slack = p.slack;
  report.entries.push_back(c3.take());
  report.entries.push_back(c4.take());
  report.entries.push_back(c5.take());
  report.entries.push_back(c6.take());
  return report;
}

Attempt<XAssignment> find_x(const Graph& g, const VertexPartition& part,
                            const PipelineParams& p, std::uint64_t seed) {
  Attempt<XAssignment> out;
  for (int k = 0; k < p.max_retries; ++k) {
    auto xa = sample_x(g, part, derive_seed(seed, SeedStream::Labels, k));
    out.report = check_x_conditions(part, xa, p);
    out.attempts = k + 1;
    if (out.report.passed()) {
      out.value = std::move(xa);
      break;
    }
  }
  return out;
}

double Budgets::theorem_cap() const {
  return static_cast<double>(n) / static_cast<double>(d) * (1.0 + 8.0 / ln_pow(n, b));
}

std::string Budgets::to_text(std::string_view prefix) const {
  std::string out;
  auto line = [&](std::string_view k, auto v) { out += fmt::format("{}{}={}\n", prefix, k, v); };
  line("base", base);
  line("class_step", class_step);
  line("fine_cap", fine_cap);
  line("kkp_step", kkp_step);
  line("target_base", target_base);
  line("delta_bound", delta_bound);
  line("label_cap", label_cap());
  line("theorem_cap", theorem_cap());
  line("near_integer", near_integer.size());
  for (std::size_t i = 0; i < near_integer.size(); ++i) {
    line(fmt::format("near_integer.{}", i), near_integer[i]);
  }
  return out;
}

Budgets compute_budgets(std::int64_t n, std::int64_t d, double b, double eps) {
  if (n < 3) throw ParameterError(fmt::format("need n >= 3, got {}", n));
  if (d < 1 || d >= n) throw ParameterError(fmt::format("need 1 <= d < n, got d={}", d));
  if (!(b > 0) || !(eps > 0)) throw ParameterError("b and eps must be positive");
  Budgets bg;
  bg.n = n;
  bg.d = d;
  bg.b = b;
  bg.eps = eps;
  bg.kkp_step = n / (3 * d);
  if (bg.kkp_step == 0) {
    throw ParameterError(
        fmt::format("d too large for the KKP stage: floor(n/(3d)) = 0 for n={}, d={}", n, d));
  }
  bg.base = ceil_div(n, d);

  const long double nd = static_cast<long double>(n) / static_cast<long double>(d);
  const long double nl = static_cast<long double>(n);
  const long double lb = b, le = eps;
  auto& f = bg.near_integer;
  bg.class_step = round_guarded(nd / ln_pow_l(n, lb), true, "class_step", f);
  bg.fine_cap = round_guarded(nd / ln_pow_l(n, lb + le), true, "fine_cap", f);
  bg.target_base = round_guarded(nl / ln_pow_l(n, lb + le), true, "target_base.1", f) +
                   4 * round_guarded(nl / ln_pow_l(n, 2 * lb + le), true, "target_base.2", f) +
                   2 * round_guarded(nl / ln_pow_l(n, 2 * lb + 3 * le), true, "target_base.3", f);
  bg.delta_bound =
      round_guarded(nl / ln_pow_l(n, 2 * lb + 2 * le), true, "delta_bound.1", f) -
      2 * round_guarded(nl / ln_pow_l(n, 3 * lb + 5 * le), true, "delta_bound.2", f);
  return bg;
}

WeightingState initial_weighting(const Graph& g, const VertexPartition& part,
                                 const XAssignment& xa, const Budgets& budgets) {
  WeightingState state(g, Stage::Omega0);
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [u, v] = edges[i];
    const int tu = part.tag(u), tv = part.tag(v);
    std::int64_t w = 0;
    if (tu == 0 && tv == 0) {
      w = xa.heavy(u, v) ? budgets.base : 0;
    } else if (tu == 0 || tv == 0) {
      w = budgets.base + (tu + tv) * budgets.class_step;
    }
    if (w != 0) state.assign(static_cast<EdgeId>(i), w);
  }
  return state;
}

std::vector<std::int64_t> greedy_fill(std::int64_t delta, std::size_t edges, std::int64_t cap) {
  std::vector<std::int64_t> out(edges, 0);
  for (auto& x : out) {
    if (delta <= 0) break;
    x = std::min(delta, cap);
    delta -= x;
  }
  if (delta > 0) throw InvariantError("greedy_fill: delta exceeds the total capacity");
  return out;
}

std::string FeasibilityReport::to_text(std::string_view prefix) const {
  std::string out;
  auto line = [&](std::string_view k, auto v) { out += fmt::format("{}{}={}\n", prefix, k, v); };
  line("vertices", vertices);
  line("delta_min", delta_min);
  line("delta_max", delta_max);
  line("capacity_min", capacity_min);
  line("below_zero", below_zero);
  line("above_capacity", above_capacity);
  line("in_expected_window", in_expected_window);
  line("feasible", feasible() ? "true" : "false");
  if (first_violation) {
    const auto& fv = *first_violation;
    line("first_violation",
         fmt::format("j={} v={} delta={} capacity={}", fv.j, fv.vertex, fv.delta, fv.capacity));
  }
  if (separation_checked) {
    line("separated", separated ? "true" : "false");
    line("max_v0_sigma", max_v0_sigma);
    line("min_u_sigma", min_u_sigma);
    line("min_u_vertex", min_u_vertex);
  }
  return out;
}

OmegaPrimeResult assign_omega_prime(WeightingState state, const VertexPartition& part,
                                    const XAssignment& xa, const Budgets& budgets,
                                    Mode mode) {
  if (state.stage() != Stage::Omega0) throw InvariantError("omega' expects a stage omega0 state");
  const Graph& g = state.graph();
  FeasibilityReport rep;
  rep.vertices = static_cast<std::int64_t>(xa.order.size());
  rep.delta_min = std::numeric_limits<std::int64_t>::max();
  rep.delta_max = std::numeric_limits<std::int64_t>::min();
  rep.capacity_min = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> delta(xa.order.size());
  for (std::size_t k = 0; k < xa.order.size(); ++k) {
    const Vertex v = xa.order[k];
    const auto j = static_cast<std::int64_t>(k) + 1;
    const std::int64_t dl = budgets.target_base + j - state.sigma(v);
    const std::int64_t cap = static_cast<std::int64_t>(part.d_u(v)) * budgets.fine_cap;
    delta[k] = dl;
    rep.delta_min = std::min(rep.delta_min, dl);
    rep.delta_max = std::max(rep.delta_max, dl);
    rep.capacity_min = std::min(rep.capacity_min, cap);
    if (dl < 0) ++rep.below_zero;
    if (dl > cap) ++rep.above_capacity;
    if (dl >= 1 && dl <= budgets.delta_bound) ++rep.in_expected_window;
    if ((dl < 0 || dl > cap) && !rep.first_violation) rep.first_violation = {j, v, dl, cap};
  }
  if (xa.order.empty()) rep.delta_min = rep.delta_max = rep.capacity_min = 0;

  if (const auto& fv = rep.first_violation) {
    throw StageError("omega_prime", "delta_infeasible",
                     fmt::format("j={} v={} delta={} capacity={} ({})", fv->j, fv->vertex,
                                 fv->delta, fv->capacity,
                                 fv->delta < 0 ? "delta < 0" : "delta > d_U(v)*fine_cap"),
                     rep.to_text());
  }

  for (std::size_t k = 0; k < xa.order.size(); ++k) {
    const Vertex v = xa.order[k];
    std::vector<EdgeId> to_u;
    auto nb = g.neighbors(v);
    auto inc = g.incident(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (part.in_u(nb[i])) to_u.push_back(inc[i]);
    }
    auto parts = greedy_fill(delta[k], to_u.size(), budgets.fine_cap);
    for (std::size_t i = 0; i < to_u.size(); ++i) state.add(to_u[i], parts[i]);
    if (state.sigma(v) != budgets.target_base + static_cast<std::int64_t>(k) + 1) {
      throw InvariantError(fmt::format("omega': sigma({}) missed its target", v));
    }
  }
  state.advance(Stage::Omega1);

  rep.separation_checked = true;
  rep.max_v0_sigma = budgets.target_base + rep.vertices;
  rep.min_u_sigma = std::numeric_limits<std::int64_t>::max();
  for (Vertex v = 0; v < g.order(); ++v) {
    if (part.in_u(v) && state.sigma(v) < rep.min_u_sigma) {
      rep.min_u_sigma = state.sigma(v);
      rep.min_u_vertex = v;
    }
  }
  if (rep.min_u_vertex < 0) {
    rep.min_u_sigma = 0;
  } else {
    rep.separated = rep.max_v0_sigma < rep.min_u_sigma;
  }
  if (!rep.separated && mode == Mode::Strict) {
    throw StageError("omega_prime", "sigma1vu",
                     fmt::format("max sigma on V_0 = {} >= sigma({}) = {}", rep.max_v0_sigma,
                                 rep.min_u_vertex, rep.min_u_sigma),
                     rep.to_text());
  }
  return {std::move(state), std::move(rep)};
}

}  // namespace irreg
