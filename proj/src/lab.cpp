#include "irreg/lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include <fmt/format.h>

#include "irreg/errors.hpp"
#include "irreg/generate.hpp"
#include "irreg/labeling.hpp"
#include "irreg/partition.hpp"
#include "irreg/rng.hpp"

namespace irreg {

namespace {

constexpr std::int64_t kChunk = 4096;

unsigned worker_count(unsigned requested, std::int64_t jobs) {
  unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::int64_t>(t, std::max<std::int64_t>(jobs, 1)));
}

// Runs job(i) for i in [0, jobs) on `threads` workers.
template <class F>
void parallel_for(std::int64_t jobs, unsigned threads, F&& job) {
  if (threads <= 1) {
    for (std::int64_t i = 0; i < jobs; ++i) job(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      (void)w;
      for (;;) {
        const auto i = next.fetch_add(1);
        if (i >= jobs || failed.load()) break;
        try {
          job(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double std_error(double p, std::int64_t trials) {
  return std::sqrt(p * (1 - p) / static_cast<double>(trials));
}

}  // namespace

ChernoffBounds chernoff_bounds(std::int64_t n, double p, double t) {
  if (n < 1) throw ParameterError(fmt::format("need n >= 1, got {}", n));
  if (!(p > 0 && p < 1)) throw ParameterError(fmt::format("need 0 < p < 1, got {}", p));
  const double np = static_cast<double>(n) * p;
  if (!(t >= 0) || t > np) {
    throw ParameterError(fmt::format("need 0 <= t <= np = {}, got t = {}", np, t));
  }
  return {std::exp(-t * t / (3 * np)), std::exp(-t * t / (2 * np))};
}

std::vector<TailEstimate> binomial_tail_estimates(std::int64_t n, double p,
                                                  std::span<const double> ts,
                                                  std::int64_t trials, std::uint64_t seed,
                                                  unsigned threads) {
  if (n < 1) throw ParameterError(fmt::format("need n >= 1, got {}", n));
  if (!(p >= 0 && p <= 1)) throw ParameterError(fmt::format("need 0 <= p <= 1, got {}", p));
  if (trials < 1) throw ParameterError(fmt::format("need trials >= 1, got {}", trials));
  const double np = static_cast<double>(n) * p;
  const std::int64_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<std::vector<std::int64_t>> hist(static_cast<std::size_t>(chunks));

  // per chunk a histogram of the sampled values, so all t share the samples
  parallel_for(chunks, worker_count(threads, chunks), [&](std::int64_t c) {
    Rng rng(derive_seed(seed, SeedStream::LabChunk, static_cast<std::uint64_t>(c)));
    const auto count = std::min(kChunk, trials - c * kChunk);
    auto& h = hist[c];
    h.assign(static_cast<std::size_t>(n) + 1, 0);
    for (std::int64_t i = 0; i < count; ++i) {
      std::int64_t s = 0;
      for (std::int64_t j = 0; j < n; ++j) s += unit_uniform(rng) < p;
      ++h[s];
    }
  });
  std::vector<std::int64_t> total(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& h : hist) {
    for (std::size_t v = 0; v < h.size(); ++v) total[v] += h[v];
  }

  std::vector<TailEstimate> out;
  for (double t : ts) {
    TailEstimate e;
    e.t = t;
    e.trials = trials;
    for (std::size_t v = 0; v < total.size(); ++v) {
      const double x = static_cast<double>(v);
      if (x > np + t) e.above += total[v];
      if (x < np - t) e.below += total[v];
    }
    e.p_above = static_cast<double>(e.above) / static_cast<double>(trials);
    e.p_below = static_cast<double>(e.below) / static_cast<double>(trials);
    e.se_above = std_error(e.p_above, trials);
    e.se_below = std_error(e.p_below, trials);
    e.resolution = 1.0 / static_cast<double>(trials);
    out.push_back(e);
  }
  return out;
}

TailEstimate binomial_tail_estimate(std::int64_t n, double p, double t, std::int64_t trials,
                                    std::uint64_t seed, unsigned threads) {
  const double ts[] = {t};
  return binomial_tail_estimates(n, p, ts, trials, seed, threads).front();
}

std::string chernoff_csv_header() {
  return "n,p,t,trials,p_above,se_above,upper_bound,p_below,se_below,lower_bound\n";
}

std::string chernoff_csv_row(std::int64_t n, double p, const TailEstimate& e) {
  auto b = chernoff_bounds(n, p, e.t);
  return fmt::format("{},{},{},{},{},{},{},{},{},{}\n", n, p, e.t, e.trials, e.p_above,
                     e.se_above, b.upper, e.p_below, e.se_below, b.lower);
}

const ConditionRate* ConditionRates::find(std::string_view id) const {
  for (const auto& r : rates) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::string ConditionRates::to_csv(bool header) const {
  std::string out;
  if (header) out = "condition,n,d,b,eps,slack,trials,rate,stderr,failures,mean_excess\n";
  for (const auto& r : rates) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", r.id, n, d, params.b, params.eps,
                       params.slack, trials, r.rate, r.stderr_rate, r.failures, r.mean_excess);
  }
  return out;
}

ConditionRates condition_failure_rates(std::int64_t n, std::int64_t d,
                                       const PipelineParams& params, std::int64_t trials,
                                       std::uint64_t seed, const Graph* graph,
                                       unsigned threads) {
  if (trials < 1) throw ParameterError(fmt::format("need trials >= 1, got {}", trials));
  if (graph && (graph->order() != n || graph->regular_degree() != static_cast<int>(d))) {
    throw ParameterError("supplied graph does not match n and d");
  }
  constexpr int kIds = 6;
  // per trial: worst relative excess per condition, NaN when it passed
  std::vector<std::array<double, kIds>> excess(static_cast<std::size_t>(trials));

  parallel_for(trials, worker_count(threads, trials), [&](std::int64_t k) {
    const auto ts = derive_seed(seed, SeedStream::LabTrial, static_cast<std::uint64_t>(k));
    std::optional<Graph> own;
    if (!graph) {
      own = generate_random_regular(static_cast<Vertex>(n), static_cast<int>(d),
                                    derive_seed(ts, SeedStream::Graph, 0));
    }
    const Graph& g = graph ? *graph : *own;
    auto part = sample_partition(g, params, derive_seed(ts, SeedStream::Partition, 0));
    auto r12 = check_partition(g, part, params);
    ConditionReport r36;
    if (part.v0_size() > 0) {
      auto xa = sample_x(g, part, derive_seed(ts, SeedStream::Labels, 0));
      r36 = check_x_conditions(part, xa, params);
    }
    auto& row = excess[k];
    row.fill(std::nan(""));
    for (const auto* rep : {&r12, &r36}) {
      for (const auto& e : rep->entries) {
        const int id = std::stoi(e.id);
        if (!e.passed()) row[id - 1] = e.rel_excess;
      }
    }
  });

  ConditionRates out;
  out.n = n;
  out.d = d;
  out.params = params;
  out.trials = trials;
  for (int i = 0; i < kIds; ++i) {
    ConditionRate r;
    r.id = std::to_string(i + 1);
    r.trials = trials;
    double sum = 0;
    for (const auto& row : excess) {
      if (!std::isnan(row[i])) {
        ++r.failures;
        sum += row[i];
      }
    }
    r.rate = static_cast<double>(r.failures) / static_cast<double>(trials);
    r.stderr_rate = std_error(r.rate, trials);
    r.mean_excess = r.failures ? sum / static_cast<double>(r.failures) : 0.0;
    out.rates.push_back(r);
  }
  return out;
}

}  // namespace irreg
