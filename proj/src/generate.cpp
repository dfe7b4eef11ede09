#include "irreg/generate.hpp"

#include <algorithm>
#include <unordered_set>

#include <fmt/format.h>

#include "irreg/errors.hpp"
#include "irreg/rng.hpp"

namespace irreg {
namespace {

// Dense bit matrix for small n, hash set of edge keys otherwise.
class EdgeSet {
 public:
  explicit EdgeSet(Vertex n) : n_(n), dense_(n <= 32768) {
    if (dense_) bits_.assign((static_cast<std::size_t>(n) * n + 63) / 64, 0);
  }

  void clear() {
    if (dense_) {
      std::fill(bits_.begin(), bits_.end(), 0);
    } else {
      keys_.clear();
    }
  }

  bool contains(Vertex a, Vertex b) const {
    if (dense_) {
      auto k = index(a, b);
      return (bits_[k / 64] >> (k % 64)) & 1;
    }
    return keys_.count(key(a, b)) != 0;
  }

  void insert(Vertex a, Vertex b) {
    if (dense_) {
      auto k = index(a, b);
      bits_[k / 64] |= std::uint64_t{1} << (k % 64);
    } else {
      keys_.insert(key(a, b));
    }
  }

 private:
  std::size_t index(Vertex a, Vertex b) const {
    if (a > b) std::swap(a, b);
    return static_cast<std::size_t>(a) * n_ + b;
  }
  static std::uint64_t key(Vertex a, Vertex b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  }

  Vertex n_;
  bool dense_;
  std::vector<std::uint64_t> bits_;
  std::unordered_set<std::uint64_t> keys_;
};

void remove_at(std::vector<Vertex>& stubs, std::size_t i) {
  stubs[i] = stubs.back();
  stubs.pop_back();
}

void remove_pair(std::vector<Vertex>& stubs, std::size_t i, std::size_t j) {
  if (i < j) std::swap(i, j);
  remove_at(stubs, i);  // larger index first keeps j valid
  remove_at(stubs, j);
}

// One pairing attempt. Returns false when the remaining stubs admit no
// legal pair.
bool try_matching(Vertex n, int d, Rng& rng, EdgeSet& present, std::vector<Edge>& edges) {
  constexpr int kRandomTries = 64;
  std::vector<Vertex> stubs;
  stubs.reserve(static_cast<std::size_t>(n) * d);
  for (Vertex v = 0; v < n; ++v) stubs.insert(stubs.end(), static_cast<std::size_t>(d), v);
  edges.clear();
  present.clear();

  while (!stubs.empty()) {
    bool placed = false;
    std::uniform_int_distribution<std::size_t> pick(0, stubs.size() - 1);
    for (int t = 0; t < kRandomTries && !placed; ++t) {
      std::size_t i = pick(rng), j = pick(rng);
      if (i == j) continue;
      Vertex a = stubs[i], b = stubs[j];
      if (a == b || present.contains(a, b)) continue;
      present.insert(a, b);
      edges.push_back({a, b});
      remove_pair(stubs, i, j);
      placed = true;
    }
    if (placed) continue;

    // Random draws keep failing: enumerate the admissible pairs exactly.
    std::vector<Vertex> distinct(stubs);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<std::pair<Vertex, Vertex>> legal;
    for (std::size_t x = 0; x < distinct.size(); ++x) {
      for (std::size_t y = x + 1; y < distinct.size(); ++y) {
        if (!present.contains(distinct[x], distinct[y])) {
          legal.emplace_back(distinct[x], distinct[y]);
        }
      }
    }
    if (legal.empty()) return false;
    std::uniform_int_distribution<std::size_t> choose(0, legal.size() - 1);
    auto [a, b] = legal[choose(rng)];
    auto ia = static_cast<std::size_t>(std::find(stubs.begin(), stubs.end(), a) - stubs.begin());
    auto ib = static_cast<std::size_t>(std::find(stubs.begin(), stubs.end(), b) - stubs.begin());
    present.insert(a, b);
    edges.push_back({a, b});
    remove_pair(stubs, ia, ib);
  }
  return true;
}

}  // namespace

Graph generate_random_regular(Vertex n, int d, std::uint64_t seed,
                              std::uint64_t max_attempts) {
  if (n < 1) throw ParameterError(fmt::format("need n >= 1, got {}", n));
  if (d < 0 || d >= n) {
    throw ParameterError(fmt::format("degree {} outside [0, {})", d, n));
  }
  if ((static_cast<std::int64_t>(n) * d) % 2 != 0) {
    throw ParameterError(fmt::format("n*d = {}*{} is odd", n, d));
  }
  if (d == 0) return Graph::from_edges(n, {});
  if (max_attempts == 0) max_attempts = 10 * static_cast<std::uint64_t>(n);

  Rng rng(seed);
  EdgeSet present(n);
  std::vector<Edge> edges;
  for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
    if (try_matching(n, d, rng, present, edges)) {
      return Graph::from_edges(n, std::move(edges));
    }
  }
  throw GenerationError(fmt::format(
      "no simple {}-regular pairing on {} vertices within {} attempts", d, n, max_attempts));
}

}  // namespace irreg
