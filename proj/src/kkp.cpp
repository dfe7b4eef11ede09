#include "irreg/kkp.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "irreg/errors.hpp"

namespace irreg {

namespace {

std::int64_t floor_mod(std::int64_t v, std::int64_t m) {
  auto r = v % m;
  return r < 0 ? r + m : r;
}

std::int64_t floor_div(std::int64_t v, std::int64_t m) {
  return (v - floor_mod(v, m)) / m;
}

constexpr int kEndgameA = 45;
constexpr int kEndgameZ = 47;
constexpr int kCongruenceCap = 20;

}  // namespace

std::int64_t PairSet::offset() const noexcept { return floor_mod(low, m); }

std::int64_t PairSet::lambda() const noexcept { return floor_div(low, 2 * m); }

PairSet pair_of(std::int64_t value, std::int64_t m) {
  if (m <= 0) throw ParameterError(fmt::format("pair_of needs m >= 1, got {}", m));
  const auto a = floor_mod(value, m);
  const auto q = floor_div(value - a, m);  // value = q*m + a
  return {floor_mod(q, 2) == 0 ? value : value - m, m};
}

std::string KkpDiagnostics::to_text(std::string_view prefix) const {
  std::string out;
  auto line = [&](std::string_view k, auto v) { out += fmt::format("{}{}={}\n", prefix, k, v); };
  line("components", components);
  line("isolated", isolated);
  line("largest_component", largest_component);
  line("processed", processed);
  line("min_du", min_du);
  if (min_option_margin) {
    line("min_option_margin", *min_option_margin);
    line("min_option_vertex", min_option_vertex);
  }
  line("endgames", endgames.size());
  for (std::size_t i = 0; i < endgames.size(); ++i) {
    const auto& r = endgames[i];
    line(fmt::format("endgame.{}", i),
         fmt::format("a={} z={} du_a={} du_z={} st={} w={} congruent={} w_tried={} sigma_a={} "
                     "sigma_z={} z_used_az={}",
                     r.a, r.z, r.du_a, r.du_z, r.st_sets, r.edge_weight, r.congruent_sets,
                     r.w_tried, r.sigma_a, r.sigma_z, r.z_used_az));
  }
  return out;
}

KkpEngine::KkpEngine(WeightingState& state, const VertexPartition& part, std::int64_t m,
                     Mode mode)
    : state_(&state),
      part_(&part),
      m_(m),
      mode_(mode),
      assigned_(static_cast<std::size_t>(state.graph().order()), kNone) {
  if (m < 1) throw ParameterError(fmt::format("KKP step must be >= 1, got {}", m));
  if (part.order() != state.graph().order()) {
    throw ParameterError("partition built over another graph");
  }
}

void KkpEngine::initialize() {
  const auto& edges = state_->graph().edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (part_->in_u(edges[i].u) && part_->in_u(edges[i].v)) {
      auto e = static_cast<EdgeId>(i);
      state_->assign(e, state_->weight(e) + m_);
    }
  }
}

std::optional<PairSet> KkpEngine::sigma_set(Vertex v) const {
  if (!analyzed(v)) return std::nullopt;
  return PairSet{assigned_[v], m_};
}

std::vector<PairSet> KkpEngine::shared_sets() const {
  std::vector<PairSet> out;
  for (const auto& [low, members] : pair_members_) {
    if (members.size() >= 2) out.push_back({low, m_});
  }
  std::sort(out.begin(), out.end(), [](const PairSet& a, const PairSet& b) { return a.low < b.low; });
  return out;
}

int KkpEngine::congruent_count(std::int64_t r) const {
  r = floor_mod(r, m_);
  int c = 0;
  for (const auto& [low, members] : pair_members_) {
    if (members.size() >= 2 && floor_mod(low, m_) == r) ++c;
  }
  return c;
}

void KkpEngine::apply(const std::vector<Move>& moves, Undo* undo) {
  const Graph& g = state_->graph();
  for (const auto& mv : moves) {
    if (mv.delta == 0) continue;
    if (undo) undo->edges.emplace_back(mv.e, state_->weight(mv.e), state_->modifications(mv.e));
    const auto& ed = g.edge(mv.e);
    for (Vertex x : {ed.u, ed.v}) {
      if (analyzed(x)) {
        auto it = sigma_count_.find(sigma(x));
        if (--it->second == 0) sigma_count_.erase(it);
        ++sigma_count_[sigma(x) + mv.delta];
      }
    }
    state_->add(mv.e, mv.delta);
  }
}

void KkpEngine::mark(Vertex v, Undo* undo) {
  const auto low = pair_of(sigma(v), m_).low;
  assigned_[v] = low;
  ++class_lows_[part_->tag(v)][low];
  pair_members_[low].push_back(v);
  ++sigma_count_[sigma(v)];
  if (undo) undo->marked.push_back(v);
}

void KkpEngine::revert(const Undo& undo) {
  for (auto it = undo.marked.rbegin(); it != undo.marked.rend(); ++it) {
    const Vertex v = *it;
    const auto low = assigned_[v];
    auto& cls = class_lows_[part_->tag(v)];
    if (--cls[low] == 0) cls.erase(low);
    auto& members = pair_members_[low];
    members.erase(std::find(members.begin(), members.end(), v));
    if (members.empty()) pair_members_.erase(low);
    auto sc = sigma_count_.find(sigma(v));
    if (--sc->second == 0) sigma_count_.erase(sc);
    assigned_[v] = kNone;
  }
  const Graph& g = state_->graph();
  for (auto it = undo.edges.rbegin(); it != undo.edges.rend(); ++it) {
    const auto [e, w, mods] = *it;
    const auto delta = w - state_->weight(e);
    const auto& ed = g.edge(e);
    for (Vertex x : {ed.u, ed.v}) {
      if (analyzed(x)) {
        auto sc = sigma_count_.find(sigma(x));
        if (--sc->second == 0) sigma_count_.erase(sc);
        ++sigma_count_[sigma(x) + delta];
      }
    }
    state_->restore(e, w, mods);
  }
}

bool KkpEngine::collision_free(const std::vector<Move>& moves,
                               std::span<const std::pair<Vertex, std::int64_t>> fresh) const {
  const Graph& g = state_->graph();
  std::unordered_map<Vertex, std::int64_t> shift;
  for (const auto& mv : moves) {
    const auto& ed = g.edge(mv.e);
    shift[ed.u] += mv.delta;
    shift[ed.v] += mv.delta;
  }
  std::unordered_map<std::int64_t, int> change;
  for (const auto& [x, s] : shift) {
    if (!analyzed(x) || s == 0) continue;
    --change[sigma(x)];
    ++change[sigma(x) + s];
  }
  for (const auto& [x, val] : fresh) ++change[val];
  for (const auto& [val, c] : change) {
    auto it = sigma_count_.find(val);
    const int base = it == sigma_count_.end() ? 0 : it->second;
    if (base + c > 1) return false;
  }
  return true;
}

void KkpEngine::process_vertex(Vertex v) {
  if (!part_->in_u(v) || analyzed(v)) throw InvariantError("process_vertex: bad vertex");
  const Graph& g = state_->graph();
  std::vector<std::pair<Vertex, EdgeId>> plus, minus, forward;
  auto nb = g.neighbors(v);
  auto inc = g.incident(v);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    const Vertex u = nb[i];
    if (!part_->in_u(u)) continue;
    if (!analyzed(u)) {
      forward.emplace_back(u, inc[i]);
    } else if (at_low(u)) {
      plus.emplace_back(u, inc[i]);
    } else {
      minus.emplace_back(u, inc[i]);
    }
  }
  if (forward.empty()) throw InvariantError(fmt::format("process_vertex: {} has no forward edge", v));

  const int cls = part_->tag(v);
  const auto s0 = sigma(v);
  const auto bm = static_cast<std::int64_t>(minus.size());
  const auto bp = static_cast<std::int64_t>(plus.size());
  const auto f = static_cast<std::int64_t>(forward.size());
  const std::int64_t lo = s0 - bm * m_;
  const std::int64_t hi = s0 + (bp + f) * m_;
  const std::int64_t options = hi - lo + 1;
  const std::int64_t forbidden = 2 * part_->class_size(cls);
  const std::int64_t margin = options - forbidden;
  if (!diag_.min_option_margin || margin < *diag_.min_option_margin) {
    diag_.min_option_margin = margin;
    diag_.min_option_vertex = v;
  }
  auto witness = [&] {
    return fmt::format("v={} class={} d_U={} options={} 2|U_{}|={}", v, cls, part_->d_u(v),
                       options, cls, forbidden);
  };
  if (mode_ == Mode::Strict && options <= forbidden) {
    throw StageError("kkp", "process_vertex_options", witness() + " (need options > 2|U_i|)",
                     diag_.to_text());
  }

  const auto& taken = class_lows_[cls];
  std::optional<std::int64_t> target;
  for (std::int64_t t = lo; t <= hi; ++t) {
    if (!taken.count(pair_of(t, m_).low)) {
      target = t;
      break;
    }
  }
  if (!target) {
    throw StageError("kkp", "process_vertex_options",
                     witness() + " (every achievable value is in a taken pair)", diag_.to_text());
  }

  std::int64_t k = *target - s0;
  std::vector<Move> moves;
  auto desc = [](const auto& a, const auto& b) { return a.first > b.first; };
  std::sort(plus.begin(), plus.end(), desc);
  std::sort(minus.begin(), minus.end(), desc);
  if (k < 0) {
    const std::int64_t c = (-k + m_ - 1) / m_;
    for (std::int64_t i = 0; i < c; ++i) moves.push_back({minus[i].second, -m_});
    k += c * m_;
  } else {
    const std::int64_t p = std::min(bp, k / m_);
    for (std::int64_t i = 0; i < p; ++i) moves.push_back({plus[i].second, m_});
    k -= p * m_;
  }
  for (const auto& [u, e] : forward) {
    if (k <= 0) break;
    const auto x = std::min(k, m_);
    moves.push_back({e, x});
    k -= x;
  }
  if (k != 0) throw InvariantError("process_vertex: target not realized");
  apply(moves, nullptr);
  if (sigma(v) != *target) throw InvariantError("process_vertex: sigma mismatch");
  mark(v, nullptr);
  ++diag_.processed;
}

std::optional<KkpEngine::Choice> KkpEngine::endgame_choice(
    Vertex v, std::span<const std::pair<EdgeId, Vertex>> edges,
    const std::unordered_set<std::int64_t>& avoid_lows, bool strict_extremes) {
  std::vector<std::pair<Vertex, EdgeId>> plus, minus;
  for (const auto& [e, u] : edges) {
    if (at_low(u)) {
      plus.emplace_back(u, e);
    } else {
      minus.emplace_back(u, e);
    }
  }
  auto desc = [](const auto& a, const auto& b) { return a.first > b.first; };
  std::sort(plus.begin(), plus.end(), desc);
  std::sort(minus.begin(), minus.end(), desc);
  const auto bm = static_cast<std::int64_t>(minus.size());
  const auto bp = static_cast<std::int64_t>(plus.size());
  const auto s0 = sigma(v);

  for (std::int64_t k = -bm; k <= bp; ++k) {
    if (strict_extremes && (k == -bm || k == bp)) continue;
    const std::int64_t t = s0 + k * m_;
    const auto low = pair_of(t, m_).low;
    if (avoid_lows.count(low) || sigma_count_.count(t)) continue;
    Vertex owner = -1;
    if (auto it = pair_members_.find(low); it != pair_members_.end()) owner = it->second.front();

    const auto& pool = k < 0 ? minus : plus;
    const std::int64_t need = k < 0 ? -k : k;
    std::vector<Move> moves;
    for (const auto& [u, e] : pool) {
      if (static_cast<std::int64_t>(moves.size()) == need) break;
      if (u == owner) continue;
      moves.push_back({e, k < 0 ? -m_ : m_});
    }
    if (static_cast<std::int64_t>(moves.size()) != need) continue;
    const std::pair<Vertex, std::int64_t> fresh[] = {{v, t}};
    if (!collision_free(moves, fresh)) continue;
    return Choice{t, std::move(moves)};
  }
  return std::nullopt;
}

void KkpEngine::process_last_two(Vertex a, Vertex z) {
  const Graph& g = state_->graph();
  const auto az = g.find_edge(a, z);
  if (!az || !part_->in_u(a) || !part_->in_u(z) || analyzed(a) || analyzed(z)) {
    throw InvariantError(fmt::format("process_last_two: bad pair {} {}", a, z));
  }
  auto backward_of = [&](Vertex v, Vertex skip1, Vertex skip2) {
    std::vector<std::pair<EdgeId, Vertex>> out;
    auto nb = g.neighbors(v);
    auto inc = g.incident(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const Vertex u = nb[i];
      if (!part_->in_u(u) || u == skip1 || u == skip2) continue;
      if (!analyzed(u)) {
        throw InvariantError(fmt::format("process_last_two: {} has unanalyzed neighbour {}", v, u));
      }
      out.emplace_back(inc[i], u);
    }
    return out;
  };

  EndgameRecord rec;
  rec.a = a;
  rec.z = z;
  rec.du_a = part_->d_u(a);
  rec.du_z = part_->d_u(z);
  const bool strict = mode_ == Mode::Strict;
  if (strict && rec.du_a < kEndgameA) {
    throw StageError("kkp", "endgame_options",
                     fmt::format("a={} d_U(a)={} (need >= {})", a, rec.du_a, kEndgameA),
                     diag_.to_text());
  }
  if (strict && rec.du_z - 1 < kEndgameZ) {
    throw StageError("kkp", "endgame_options",
                     fmt::format("z={} d_U(z)-1={} (need >= {})", z, rec.du_z - 1, kEndgameZ),
                     diag_.to_text());
  }

  std::unordered_set<std::int64_t> st;
  std::vector<int> residue(static_cast<std::size_t>(m_), 0);
  for (const auto& [low, members] : pair_members_) {
    if (members.size() >= 2) {
      st.insert(low);
      ++residue[floor_mod(low, m_)];
    }
  }
  rec.st_sets = static_cast<std::int64_t>(st.size());

  const std::int64_t current = state_->weight(*az);
  const std::int64_t base_w = current - m_;  // weight of az before the KKP pass
  struct WOption {
    std::int64_t w;
    int count;
  };
  std::vector<WOption> ws;
  for (std::int64_t w = 0; w <= m_; ++w) {
    const auto d = w - m_;
    const int ca = residue[floor_mod(sigma(a) + d, m_)];
    const int cz = residue[floor_mod(sigma(z) + d, m_)];
    ws.push_back({w, std::max(ca, cz)});
  }
  std::stable_sort(ws.begin(), ws.end(),
                   [](const WOption& x, const WOption& y) { return x.count < y.count; });
  if (strict) {
    if (ws.front().count > kCongruenceCap) {
      throw StageError("kkp", "endgame_congruence",
                       fmt::format("a={} z={} best w={} leaves {} congruent S_t sets (cap {})", a,
                                   z, ws.front().w, ws.front().count, kCongruenceCap),
                       diag_.to_text());
    }
    ws.resize(1);
  }

  const auto edges_a = backward_of(a, z, -1);
  for (const auto& opt : ws) {
    ++rec.w_tried;
    Undo undo;
    apply({{*az, base_w + opt.w - current}}, &undo);
    auto ca = endgame_choice(a, edges_a, st, strict);
    if (!ca) {
      revert(undo);
      continue;
    }
    apply(ca->moves, &undo);
    mark(a, &undo);
    const auto sa_low = assigned_[a];
    Vertex u1 = -1;
    for (Vertex x : pair_members_[sa_low]) {
      if (x != a) u1 = x;
    }
    auto avoid = st;
    avoid.insert(sa_low);
    auto edges_z = backward_of(z, a, u1);
    auto cz = endgame_choice(z, edges_z, avoid, strict);
    bool used_az = false;
    if (!cz && !strict) {
      // the az edge as one more coarse move, if it stays non-negative
      const std::int64_t move = at_low(a) ? m_ : -m_;
      if (state_->weight(*az) + move >= base_w) {
        edges_z.emplace_back(*az, a);
        cz = endgame_choice(z, edges_z, avoid, false);
        used_az = cz.has_value();
      }
    }
    if (!cz) {
      revert(undo);
      continue;
    }
    apply(cz->moves, nullptr);
    mark(z, nullptr);
    rec.edge_weight = opt.w;
    rec.congruent_sets = opt.count;
    rec.sigma_a = sigma(a);
    rec.sigma_z = sigma(z);
    rec.z_used_az = used_az;
    diag_.endgames.push_back(rec);
    return;
  }
  throw StageError("kkp", "endgame_no_choice",
                   fmt::format("a={} z={} d_U(a)={} d_U(z)={} |S_t|={} w_tried={}", a, z,
                               rec.du_a, rec.du_z, rec.st_sets, rec.w_tried),
                   diag_.to_text());
}

void KkpEngine::process_isolated(Vertex v) {
  if (!part_->in_u(v) || analyzed(v)) throw InvariantError("process_isolated: bad vertex");
  if (sigma_count_.count(sigma(v))) {
    throw StageError("kkp", "isolated_collision",
                     fmt::format("v={} sigma={} equals the sigma of an analyzed vertex", v,
                                 sigma(v)),
                     diag_.to_text());
  }
  mark(v, nullptr);
  ++diag_.isolated;
}

void KkpEngine::run() {
  const Graph& g = state_->graph();
  const auto uverts = part_->u_vertices();
  auto sub = induced_subgraph(g, uverts);
  auto comps = components_with_order(sub.graph);
  diag_.components = static_cast<std::int64_t>(comps.size());
  diag_.min_du = std::numeric_limits<int>::max();
  for (Vertex u : uverts) {
    if (part_->d_u(u) > 0) diag_.min_du = std::min<std::int64_t>(diag_.min_du, part_->d_u(u));
  }
  if (diag_.min_du == std::numeric_limits<int>::max()) diag_.min_du = 0;

  for (const auto& comp : comps) {
    const auto size = comp.order.size();
    diag_.largest_component = std::max<std::int64_t>(diag_.largest_component, size);
    auto old = [&](std::size_t j) { return sub.to_old[comp.order[j]]; };
    if (size == 1) {
      process_isolated(old(0));
      continue;
    }
    for (std::size_t j = 0; j + 2 < size; ++j) process_vertex(old(j));
    process_last_two(old(size - 2), old(size - 1));
  }
}

KkpResult run_kkp(WeightingState state, const VertexPartition& part, std::int64_t m, Mode mode) {
  if (state.stage() != Stage::Omega1) throw InvariantError("KKP pass expects a stage omega1 state");
  KkpEngine engine(state, part, m, mode);
  engine.initialize();
  engine.run();

  std::array<std::unordered_map<std::int64_t, Vertex>, VertexPartition::kClasses + 1> seen;
  for (Vertex v : part.u_vertices()) {
    auto [it, fresh] = seen[part.tag(v)].emplace(state.sigma(v), v);
    if (!fresh) {
      throw StageError("kkp", "class_collision",
                       fmt::format("sigma({}) = sigma({}) = {} in U_{}", it->second, v,
                                   state.sigma(v), part.tag(v)),
                       engine.diagnostics().to_text());
    }
  }
  state.advance(Stage::Omega2);
  return {std::move(state), engine.diagnostics()};
}

ConditionReport separation_checks(const WeightingState& state, const VertexPartition& part,
                                  std::span<const std::int64_t> sigma_omega1) {
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  constexpr auto kMin = std::numeric_limits<std::int64_t>::min();
  std::array<std::int64_t, VertexPartition::kClasses + 1> lo, hi;
  std::array<Vertex, VertexPartition::kClasses + 1> lo_v, hi_v;
  lo.fill(kMax);
  hi.fill(kMin);
  lo_v.fill(-1);
  hi_v.fill(-1);
  std::int64_t u_lo = kMax;
  Vertex u_lo_v = -1;
  for (Vertex v = 0; v < part.order(); ++v) {
    const int t = part.tag(v);
    const auto s = state.sigma(v);
    if (s < lo[t]) lo[t] = s, lo_v[t] = v;
    if (s > hi[t]) hi[t] = s, hi_v[t] = v;
    if (t != 0 && s < u_lo) u_lo = s, u_lo_v = v;
  }

  ConditionReport report;
  ConditionTally a("a");
  if (part.v0_size() > 0 && part.u_size() > 0) {
    const double measured = static_cast<double>(hi[0]);
    const double bound = static_cast<double>(u_lo) - 1;
    if (a.observe(measured, bound)) {
      a.set_worst(fmt::format("v={},u={}", hi_v[0], u_lo_v),
                  fmt::format("max V_0 sigma({})={} vs min U sigma({})={}", hi_v[0], hi[0],
                              u_lo_v, u_lo));
    }
  }
  report.entries.push_back(a.take());

  ConditionTally b("b");
  int prev = -1;
  for (int i = 1; i <= VertexPartition::kClasses; ++i) {
    if (part.class_size(i) == 0) continue;
    if (prev > 0) {
      if (b.observe(static_cast<double>(hi[prev]), static_cast<double>(lo[i]) - 1)) {
        b.set_worst(fmt::format("U_{},U_{}", prev, i),
                    fmt::format("max U_{} sigma({})={} vs min U_{} sigma({})={}", prev,
                                hi_v[prev], hi[prev], i, lo_v[i], lo[i]));
      }
    }
    prev = i;
  }
  report.entries.push_back(b.take());

  ConditionTally c("c");
  if (sigma_omega1.size() != static_cast<std::size_t>(part.order())) {
    throw ParameterError("sigma_omega1 must have one entry per vertex");
  }
  for (Vertex v = 0; v < part.order(); ++v) {
    if (part.in_u(v)) continue;
    const auto diff = std::abs(state.sigma(v) - sigma_omega1[v]);
    if (c.observe(static_cast<double>(diff), 0.0)) {
      c.set_worst(fmt::format("v={}", v), fmt::format("sigma({}) moved from {} to {}", v,
                                                      sigma_omega1[v], state.sigma(v)));
    }
  }
  report.entries.push_back(c.take());
  return report;
}

}  // namespace irreg
