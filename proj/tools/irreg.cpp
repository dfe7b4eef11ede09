// Command line front end: gen, weight, verify, exact, bounds, lab.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "irreg/codec.hpp"
#include "irreg/errors.hpp"
#include "irreg/generate.hpp"
#include "irreg/lab.hpp"
#include "irreg/labeling.hpp"
#include "irreg/pipeline.hpp"
#include "irreg/rng.hpp"
#include "irreg/verify.hpp"
#include "irreg/weighting.hpp"

namespace {

using namespace irreg;

constexpr int kOk = 0;
constexpr int kNotIrregular = 1;
constexpr int kStageFailure = 2;
constexpr int kParameterError = 3;
constexpr int kInternalError = 4;

std::uint64_t default_seed() {
  if (const char* s = std::getenv("IRREG_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw ParameterError(fmt::format("IRREG_SEED='{}' is not an unsigned integer", s));
    }
  }
  return 1;
}

// Writes to `path`, or stdout when it is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

std::optional<GraphFormat> format_option(const std::string& name) {
  if (name.empty()) return std::nullopt;
  auto f = parse_format(name);
  if (!f) throw ParameterError(fmt::format("unknown graph format '{}'", name));
  return f;
}

Graph make_graph(const std::string& path, const std::string& format, std::int64_t n,
                 std::int64_t d, std::uint64_t graph_seed) {
  if (!path.empty()) return load_graph(path, format_option(format));
  if (n <= 0) throw ParameterError("give --graph or --n and --d");
  return generate_random_regular(static_cast<Vertex>(n), static_cast<int>(d),
                                 derive_seed(graph_seed, SeedStream::Graph, 0));
}

struct GenArgs {
  std::int64_t n = 0;
  std::int64_t d = 0;
  std::optional<std::uint64_t> seed;
  std::string format = "edgelist";
  std::string out;
};

int run_gen(const GenArgs& a) {
  auto g = generate_random_regular(static_cast<Vertex>(a.n), static_cast<int>(a.d),
                                   derive_seed(a.seed.value_or(default_seed()),
                                               SeedStream::Graph, 0));
  auto f = format_option(a.format);
  if (a.out.empty() || a.out == "-") {
    std::cout << write_graph(g, f.value_or(GraphFormat::EdgeList));
  } else {
    save_graph(g, a.out, f);
  }
  return kOk;
}

struct WeightArgs {
  std::string graph;
  std::string format;
  std::int64_t n = 0;
  std::int64_t d = 0;
  std::optional<std::uint64_t> graph_seed;
  std::string preset;
  double eps0 = 1.0;
  std::optional<double> b;
  std::optional<double> eps;
  double slack = 1.0;
  std::string mode = "empirical";
  std::optional<std::uint64_t> seed;
  int retries = 100;
  std::string out_weights;
  std::string out_report;
  bool timings = false;
};

int run_weight(const WeightArgs& a) {
  const auto seed = a.seed.value_or(default_seed());
  PipelineParams p;
  if (!a.preset.empty()) p = apply_preset(a.preset, p, a.eps0);
  if (a.b) p.b = *a.b;
  if (a.eps) p.eps = *a.eps;
  p.slack = a.slack;
  p.mode = parse_mode(a.mode);
  p.max_retries = a.retries;
  p.validate();
  auto g = make_graph(a.graph, a.format, a.n, a.d, a.graph_seed.value_or(seed));

  auto out = run_pipeline(g, p, seed);
  if (a.timings) {
    for (const auto& t : out.timings) std::cerr << fmt::format("timing.{}={:.3f}ms\n", t.stage, t.ms);
  }
  if (out.ok() && !a.out_weights.empty()) {
    CsvHeader header = {{"stage", "omega3"},
                        {"n", std::to_string(g.order())},
                        {"d", std::to_string(*g.regular_degree())},
                        {"b", fmt::format("{}", p.b)},
                        {"eps", fmt::format("{}", p.eps)},
                        {"seed", std::to_string(seed)}};
    emit(a.out_weights, write_weights_csv(g, out.final_state->weights(), header));
  }
  const auto text = out.report.to_text();
  if (a.out_report.empty()) {
    std::cout << text;
  } else {
    emit(a.out_report, text);
  }
  switch (out.status) {
    case PipelineOutcome::Status::Success: return kOk;
    case PipelineOutcome::Status::Failed: return kStageFailure;
    case PipelineOutcome::Status::Refused: return kParameterError;
  }
  return kInternalError;
}

struct VerifyArgs {
  std::string graph;
  std::string format;
  std::string weights;
};

int run_verify(const VerifyArgs& a) {
  auto g = load_graph(a.graph, format_option(a.format));
  auto w = read_weights_csv(g, read_file(a.weights));
  auto r = is_irregular(g, w);
  std::cout << r.to_text();
  return r.irregular ? kOk : kNotIrregular;
}

struct ExactArgs {
  std::string graph;
  std::string format;
  int kmax = 10;
  std::size_t max_edges = 20;
  std::string out_weights;
};

int run_exact(const ExactArgs& a) {
  auto g = load_graph(a.graph, format_option(a.format));
  auto r = exact_strength(g, a.kmax, a.max_edges);
  std::cout << r.to_text();
  if (r.strength) {
    std::string w;
    for (std::size_t i = 0; i < r.witness.size(); ++i) {
      w += fmt::format("{}{}", i ? "," : "", r.witness[i]);
    }
    std::cout << "witness=" << w << "\n";
    if (!a.out_weights.empty()) {
      emit(a.out_weights, write_weights_csv(g, r.witness, {{"k", std::to_string(*r.strength)}}));
    }
  }
  return kOk;
}

struct BoundsArgs {
  std::int64_t n = 0;
  std::int64_t d = 0;
  std::string preset;
  double eps0 = 1.0;
  std::optional<double> b;
  std::optional<double> eps;
};

int run_bounds(const BoundsArgs& a) {
  PipelineParams p;
  if (!a.preset.empty()) p = apply_preset(a.preset, p, a.eps0);
  if (a.b) p.b = *a.b;
  if (a.eps) p.eps = *a.eps;
  p.validate();
  KeyValueReport rep;
  rep.add("n", a.n);
  rep.add("d", a.d);
  rep.add("b", p.b);
  rep.add("eps", p.eps);
  rep.add("lower_bound", regular_lower_bound(a.n, a.d));
  auto budgets = compute_budgets(a.n, a.d, p.b, p.eps);
  rep.add("theorem_cap", budgets.theorem_cap());
  rep.append_text("budgets.", budgets.to_text());
  auto range = strict_range(static_cast<double>(a.n), p.b, p.eps);
  rep.add("strict_range.lo", range.lo);
  rep.add("strict_range.hi", range.hi);
  rep.add_bool("strict_range.nonempty", range.nonempty());
  rep.add_bool("strict_range.contains_d", range.contains(static_cast<double>(a.d)));
  std::cout << rep.to_text();
  return kOk;
}

struct ChernoffArgs {
  std::vector<std::int64_t> n{100, 1000, 10000};
  std::vector<double> p{0.1, 0.5};
  std::vector<double> t_frac{0.2, 0.5, 1.0};
  std::int64_t trials = 100000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::string out;
};

int run_chernoff(const ChernoffArgs& a) {
  const auto seed = a.seed.value_or(default_seed());
  std::string csv = chernoff_csv_header();
  std::uint64_t point = 0;
  for (auto n : a.n) {
    for (double p : a.p) {
      std::vector<double> ts;
      for (double f : a.t_frac) ts.push_back(f * static_cast<double>(n) * p);
      for (double t : ts) chernoff_bounds(n, p, t);  // validates before sampling
      auto est = binomial_tail_estimates(n, p, ts, a.trials, derive_seed(seed, SeedStream::LabTrial, point++),
                                         a.threads);
      for (const auto& e : est) csv += chernoff_csv_row(n, p, e);
    }
  }
  emit(a.out, csv);
  return kOk;
}

struct ConditionsArgs {
  std::int64_t n = 0;
  std::int64_t d = 0;
  std::string graph;
  std::string format;
  std::string preset;
  double eps0 = 1.0;
  std::optional<double> b;
  std::optional<double> eps;
  std::vector<double> slack{1.0};
  std::int64_t trials = 100;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::string out;
};

int run_conditions(const ConditionsArgs& a) {
  const auto seed = a.seed.value_or(default_seed());
  PipelineParams p;
  if (!a.preset.empty()) p = apply_preset(a.preset, p, a.eps0);
  if (a.b) p.b = *a.b;
  if (a.eps) p.eps = *a.eps;
  std::optional<Graph> g;
  std::int64_t n = a.n, d = a.d;
  if (!a.graph.empty()) {
    g = load_graph(a.graph, format_option(a.format));
    if (!g->regular_degree()) throw ParameterError("the graph is not regular");
    n = g->order();
    d = *g->regular_degree();
  }
  std::string csv;
  bool first = true;
  for (double s : a.slack) {
    p.slack = s;
    p.validate();
    auto rates = condition_failure_rates(n, d, p, a.trials, seed, g ? &*g : nullptr, a.threads);
    csv += rates.to_csv(first);
    first = false;
  }
  emit(a.out, csv);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Irregular edge weightings of regular graphs"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "Generate a random d-regular graph");
  c_gen->add_option("--n", gen.n, "Number of vertices")->required();
  c_gen->add_option("--d", gen.d, "Degree")->required();
  c_gen->add_option("--seed", gen.seed, "Seed (default: $IRREG_SEED or 1)");
  c_gen->add_option("--format", gen.format, "edgelist or graph6");
  c_gen->add_option("--out", gen.out, "Output file (default stdout)");

  WeightArgs wa;
  auto* c_weight = app.add_subcommand("weight", "Build an irregular weighting");
  c_weight->add_option("--graph", wa.graph, "Graph file");
  c_weight->add_option("--format", wa.format, "Graph file format");
  c_weight->add_option("--n", wa.n, "Generate a graph with this many vertices");
  c_weight->add_option("--d", wa.d, "Degree of the generated graph");
  c_weight->add_option("--graph-seed", wa.graph_seed, "Seed for the generated graph");
  c_weight->add_option("--preset", wa.preset, "reference, corollary1 or corollary2");
  c_weight->add_option("--eps0", wa.eps0, "eps0 for the corollary2 preset");
  c_weight->add_option("--b", wa.b, "Exponent b");
  c_weight->add_option("--eps", wa.eps, "Exponent eps");
  c_weight->add_option("--slack", wa.slack, "Window scale (empirical mode)");
  c_weight->add_option("--mode", wa.mode, "strict or empirical");
  c_weight->add_option("--seed", wa.seed, "Seed (default: $IRREG_SEED or 1)");
  c_weight->add_option("--retries", wa.retries, "Samples per Las Vegas stage");
  c_weight->add_option("--out-weights", wa.out_weights, "CSV of final weights");
  c_weight->add_option("--out-report", wa.out_report, "Report file (default stdout)");
  c_weight->add_flag("--timings", wa.timings, "Print stage timings to stderr");

  VerifyArgs va;
  auto* c_verify = app.add_subcommand("verify", "Check a weighting for irregularity");
  c_verify->add_option("--graph", va.graph, "Graph file")->required();
  c_verify->add_option("--format", va.format, "Graph file format");
  c_verify->add_option("--weights", va.weights, "Weight CSV")->required();

  ExactArgs ea;
  auto* c_exact = app.add_subcommand("exact", "Exact irregularity strength of a small graph");
  c_exact->add_option("--graph", ea.graph, "Graph file")->required();
  c_exact->add_option("--format", ea.format, "Graph file format");
  c_exact->add_option("--kmax", ea.kmax, "Largest k to try");
  c_exact->add_option("--max-edges", ea.max_edges, "Refuse larger graphs");
  c_exact->add_option("--out-weights", ea.out_weights, "CSV of the witness");

  BoundsArgs ba;
  auto* c_bounds = app.add_subcommand("bounds", "Lower bound, cap and budgets");
  c_bounds->add_option("--n", ba.n, "Number of vertices")->required();
  c_bounds->add_option("--d", ba.d, "Degree")->required();
  c_bounds->add_option("--preset", ba.preset, "reference, corollary1 or corollary2");
  c_bounds->add_option("--eps0", ba.eps0, "eps0 for the corollary2 preset");
  c_bounds->add_option("--b", ba.b, "Exponent b");
  c_bounds->add_option("--eps", ba.eps, "Exponent eps");

  auto* c_lab = app.add_subcommand("lab", "Concentration experiments");
  c_lab->require_subcommand(1);
  ChernoffArgs ca;
  auto* c_chernoff = c_lab->add_subcommand("chernoff", "Binomial tails against the bounds");
  c_chernoff->add_option("--n", ca.n, "Values of n")->delimiter(',');
  c_chernoff->add_option("--p", ca.p, "Values of p")->delimiter(',');
  c_chernoff->add_option("--t-frac", ca.t_frac, "t as fractions of np")->delimiter(',');
  c_chernoff->add_option("--trials", ca.trials, "Samples per (n, p)");
  c_chernoff->add_option("--seed", ca.seed, "Seed (default: $IRREG_SEED or 1)");
  c_chernoff->add_option("--threads", ca.threads, "Worker threads (0 = all cores)");
  c_chernoff->add_option("--out", ca.out, "CSV file (default stdout)");
  ConditionsArgs co;
  auto* c_cond = c_lab->add_subcommand("conditions", "Failure rates of the sampling windows");
  c_cond->add_option("--n", co.n, "Number of vertices");
  c_cond->add_option("--d", co.d, "Degree");
  c_cond->add_option("--graph", co.graph, "Use this graph in every trial");
  c_cond->add_option("--format", co.format, "Graph file format");
  c_cond->add_option("--preset", co.preset, "reference, corollary1 or corollary2");
  c_cond->add_option("--eps0", co.eps0, "eps0 for the corollary2 preset");
  c_cond->add_option("--b", co.b, "Exponent b");
  c_cond->add_option("--eps", co.eps, "Exponent eps");
  c_cond->add_option("--slack", co.slack, "One or more window scales")->delimiter(',');
  c_cond->add_option("--trials", co.trials, "Trials per slack");
  c_cond->add_option("--seed", co.seed, "Seed (default: $IRREG_SEED or 1)");
  c_cond->add_option("--threads", co.threads, "Worker threads (0 = all cores)");
  c_cond->add_option("--out", co.out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParameterError;
  }

  try {
    if (c_gen->parsed()) return run_gen(gen);
    if (c_weight->parsed()) return run_weight(wa);
    if (c_verify->parsed()) return run_verify(va);
    if (c_exact->parsed()) return run_exact(ea);
    if (c_bounds->parsed()) return run_bounds(ba);
    if (c_chernoff->parsed()) return run_chernoff(ca);
    if (c_cond->parsed()) return run_conditions(co);
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kParameterError;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kParameterError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParameterError;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kParameterError;
  } catch (const GenerationError& e) {
    std::cerr << "generation failed: " << e.what() << "\n";
    return kStageFailure;
  } catch (const StageError& e) {
    std::cerr << "stage failure: " << e.what() << "\n";
    return kStageFailure;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInternalError;
}
