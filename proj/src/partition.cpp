#include "irreg/partition.hpp"

#include <cmath>

#include <fmt/format.h>

#include "irreg/errors.hpp"
#include "irreg/rng.hpp"

namespace irreg {

VertexPartition VertexPartition::from_tags(const Graph& g, std::vector<std::uint8_t> tags) {
  if (tags.size() != static_cast<std::size_t>(g.order())) {
    throw ParameterError(
        fmt::format("{} tags for a graph on {} vertices", tags.size(), g.order()));
  }
  VertexPartition part;
  for (auto t : tags) {
    if (t > kClasses) throw ParameterError(fmt::format("partition tag {} > 7", t));
    ++part.sizes_[t];
  }
  part.counts_.assign(tags.size(), {});
  for (Vertex v = 0; v < g.order(); ++v) {
    auto& c = part.counts_[v];
    for (Vertex w : g.neighbors(v)) ++c[tags[w]];
  }
  part.tags_ = std::move(tags);
  return part;
}

std::int64_t VertexPartition::u_size() const noexcept {
  std::int64_t s = 0;
  for (int i = 1; i <= kClasses; ++i) s += sizes_[i];
  return s;
}

int VertexPartition::d_u(Vertex v) const noexcept {
  int s = 0;
  for (int i = 1; i <= kClasses; ++i) s += counts_[v][i];
  return s;
}

std::vector<Vertex> VertexPartition::members(int tag) const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < order(); ++v) {
    if (tags_[v] == tag) out.push_back(v);
  }
  return out;
}

std::vector<Vertex> VertexPartition::u_vertices() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < order(); ++v) {
    if (tags_[v] != 0) out.push_back(v);
  }
  return out;
}

double u_probability(Vertex n, double b, double eps) {
  if (n < 3) throw ParameterError(fmt::format("need n >= 3, got {}", n));
  double p = 1.0 / ln_pow(n, b + eps);
  if (!(p > 0.0 && p < 1.0)) {
    throw ParameterError(fmt::format(
        "1/ln^(b+eps) n = {} is not a probability for n={}, b={}, eps={}", p, n, b, eps));
  }
  return p;
}

VertexPartition sample_partition(const Graph& g, const PipelineParams& p, std::uint64_t seed) {
  if (!g.regular_degree()) throw ParameterError("partition sampling needs a regular graph");
  const double prob = u_probability(g.order(), p.b, p.eps);
  Rng rng(seed);
  std::uniform_int_distribution<int> cls(1, VertexPartition::kClasses);
  std::vector<std::uint8_t> tags(static_cast<std::size_t>(g.order()), 0);
  for (auto& t : tags) {
    if (unit_uniform(rng) < prob) t = static_cast<std::uint8_t>(cls(rng));
  }
  return VertexPartition::from_tags(g, std::move(tags));
}

ConditionReport check_partition(const Graph& g, const VertexPartition& part,
                                const PipelineParams& p) {
  if (!g.regular_degree()) throw ParameterError("partition check needs a regular graph");
  if (part.order() != g.order()) throw ParameterError("partition built over another graph");
  const double n = g.order();
  const double d = *g.regular_degree();
  const double main = ln_pow(n, p.b + p.eps);
  const double fine = ln_pow(n, 2 * p.b + 4 * p.eps);

  ConditionReport report;
  report.slack = p.slack;

  ConditionTally sizes("1");
  const double size_mean = n / (7 * main);
  const double size_bound = p.slack * n / (7 * fine);
  for (int i = 1; i <= VertexPartition::kClasses; ++i) {
    double dev = std::abs(part.class_size(i) - size_mean);
    if (sizes.observe(dev, size_bound)) {
      sizes.set_worst(fmt::format("U_{}", i),
                      fmt::format("||U_{}| - {}| = |{} - {}| = {} vs bound {}", i, size_mean,
                                  part.class_size(i), size_mean, dev, size_bound));
    }
  }
  report.entries.push_back(sizes.take());

  ConditionTally degrees("2");
  const double deg_mean = d / (7 * main);
  const double deg_bound = p.slack * d / (7 * fine);
  for (Vertex v = 0; v < g.order(); ++v) {
    for (int i = 1; i <= VertexPartition::kClasses; ++i) {
      double dev = std::abs(part.d_class(v, i) - deg_mean);
      if (degrees.observe(dev, deg_bound)) {
        degrees.set_worst(fmt::format("v={},i={}", v, i),
                          fmt::format("|d_U{}({}) - {}| = |{} - {}| = {} vs bound {}", i, v,
                                      deg_mean, part.d_class(v, i), deg_mean, dev, deg_bound));
      }
    }
  }
  report.entries.push_back(degrees.take());
  return report;
}

Attempt<VertexPartition> find_partition(const Graph& g, const PipelineParams& p,
                                        std::uint64_t seed) {
  Attempt<VertexPartition> out;
  for (int k = 0; k < p.max_retries; ++k) {
    auto part = sample_partition(g, p, derive_seed(seed, SeedStream::Partition, k));
    out.report = check_partition(g, part, p);
    out.attempts = k + 1;
    if (out.report.passed()) {
      out.value = std::move(part);
      break;
    }
  }
  return out;
}

}  // namespace irreg
