#include "irreg/weighting.hpp"

#include <charconv>
#include <iterator>

#include <fmt/format.h>

#include "irreg/errors.hpp"

namespace irreg {

std::string_view to_string(Stage s) noexcept {
  switch (s) {
    case Stage::Omega0: return "omega0";
    case Stage::Omega1: return "omega1";
    case Stage::Omega2: return "omega2";
    case Stage::Omega3: return "omega3";
  }
  return "?";
}

WeightingState::WeightingState(const Graph& g, Stage stage)
    : g_(&g),
      stage_(stage),
      w_(g.size(), 0),
      sigma_(static_cast<std::size_t>(g.order()), 0),
      mods_(g.size(), 0) {}

void WeightingState::advance(Stage next) {
  if (static_cast<int>(next) <= static_cast<int>(stage_)) {
    throw InvariantError(fmt::format("stage cannot move from {} to {}", to_string(stage_),
                                     to_string(next)));
  }
  stage_ = next;
}

void WeightingState::assign(EdgeId e, std::int64_t w) {
  const auto& ed = g_->edge(e);
  auto delta = w - w_[e];
  w_[e] = w;
  sigma_[ed.u] += delta;
  sigma_[ed.v] += delta;
}

void WeightingState::add(EdgeId e, std::int64_t delta) {
  if (delta == 0) return;
  const auto& ed = g_->edge(e);
  w_[e] += delta;
  sigma_[ed.u] += delta;
  sigma_[ed.v] += delta;
  if (mods_[e] < 255) ++mods_[e];
}

void WeightingState::restore(EdgeId e, std::int64_t w, int modifications) {
  assign(e, w);
  mods_[e] = static_cast<std::uint8_t>(modifications);
}

bool WeightingState::sigma_consistent() const {
  std::vector<std::int64_t> s(sigma_.size(), 0);
  for (std::size_t i = 0; i < w_.size(); ++i) {
    const auto& ed = g_->edge(static_cast<EdgeId>(i));
    s[ed.u] += w_[i];
    s[ed.v] += w_[i];
  }
  return s == sigma_;
}

std::string write_weights_csv(const Graph& g, std::span<const std::int64_t> weights,
                              const CsvHeader& header) {
  if (weights.size() != g.size()) {
    throw InputError(fmt::format("{} weights for {} edges", weights.size(), g.size()));
  }
  std::string out = "#";
  for (const auto& [k, v] : header) out += fmt::format(" {}={}", k, v);
  out += "\nu,v,weight\n";
  auto it = std::back_inserter(out);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const auto& e = g.edge(static_cast<EdgeId>(i));
    fmt::format_to(it, "{},{},{}\n", e.u, e.v, weights[i]);
  }
  return out;
}

std::vector<std::int64_t> read_weights_csv(const Graph& g, std::string_view text) {
  std::vector<std::int64_t> w(g.size(), 0);
  std::vector<bool> seen(g.size(), false);
  std::size_t line_no = 0, pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    const std::size_t offset = pos;
    pos = nl + 1;
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    if (line.empty() || line.front() == '#' || line == "u,v,weight") continue;

    std::int64_t f[3];
    std::string_view rest = line;
    for (int k = 0; k < 3; ++k) {
      auto comma = k < 2 ? rest.find(',') : rest.size();
      if (comma == std::string_view::npos) {
        throw ParseError(fmt::format("line {}: expected u,v,weight", line_no), line_no, offset);
      }
      auto tok = rest.substr(0, comma);
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), f[k]);
      if (ec != std::errc{} || p != tok.data() + tok.size()) {
        throw ParseError(fmt::format("line {}: bad number '{}'", line_no, tok), line_no,
                         offset);
      }
      rest = k < 2 ? rest.substr(comma + 1) : std::string_view{};
    }
    if (f[0] < 0 || f[1] < 0 || f[0] > INT32_MAX || f[1] > INT32_MAX) {
      throw InputError(fmt::format("line {}: vertex id out of range", line_no));
    }
    auto e = g.find_edge(static_cast<Vertex>(f[0]), static_cast<Vertex>(f[1]));
    if (!e) throw InputError(fmt::format("line {}: {}-{} is not an edge", line_no, f[0], f[1]));
    if (seen[*e]) throw InputError(fmt::format("line {}: edge {}-{} repeated", line_no, f[0], f[1]));
    seen[*e] = true;
    w[*e] = f[2];
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      const auto& e = g.edge(static_cast<EdgeId>(i));
      throw InputError(fmt::format("edge {}-{} has no weight", e.u, e.v));
    }
  }
  return w;
}

}  // namespace irreg
