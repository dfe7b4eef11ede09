#include "irreg/pipeline.hpp"

#include <cmath>

#include <fmt/format.h>

#include "irreg/errors.hpp"

namespace irreg {

namespace {

using Clock = std::chrono::steady_clock;

class StageClock {
 public:
  explicit StageClock(std::vector<StageTiming>& out) : out_(out), start_(Clock::now()) {}
  void lap(std::string stage) {
    auto now = Clock::now();
    out_.push_back({std::move(stage),
                    std::chrono::duration<double, std::milli>(now - start_).count()});
    start_ = now;
  }

 private:
  std::vector<StageTiming>& out_;
  Clock::time_point start_;
};

void fail(PipelineOutcome& out, std::string stage, std::string condition, std::string witness,
          std::string_view details = {}) {
  out.status = PipelineOutcome::Status::Failed;
  out.failure_stage = std::move(stage);
  out.failure_condition = std::move(condition);
  out.failure_witness = std::move(witness);
  out.report.add("failure.stage", out.failure_stage);
  out.report.add("failure.condition", out.failure_condition);
  out.report.add("failure.witness", out.failure_witness);
  out.report.append_text("failure.detail.", details);
}

void fail_conditions(PipelineOutcome& out, std::string stage, const ConditionReport& rep) {
  const auto* worst = rep.tightest_failure();
  fail(out, std::move(stage), worst ? worst->id : "none", worst ? worst->witness : "");
}

}  // namespace

PipelineParams apply_preset(std::string_view name, PipelineParams base, double eps0) {
  if (name == "reference") {
    base.b = 0.2;
    base.eps = 0.05;
  } else if (name == "corollary1") {
    base.b = 1.0;
    base.eps = 1.0 / 12.0;
  } else if (name == "corollary2") {
    if (!(eps0 > 0)) throw ParameterError(fmt::format("eps0 must be positive, got {}", eps0));
    base.b = eps0 / 18.0;
    base.eps = eps0 / 18.0;
  } else {
    throw ParameterError(fmt::format("unknown preset '{}'", name));
  }
  return base;
}

StrictRange strict_range(double n, double b, double eps) {
  return {ln_pow(n, 1 + 6 * b + 12 * eps), n / ln_pow(n, 2 * b + 5 * eps)};
}

std::string_view to_string(PipelineOutcome::Status s) noexcept {
  switch (s) {
    case PipelineOutcome::Status::Success: return "success";
    case PipelineOutcome::Status::Failed: return "failed";
    case PipelineOutcome::Status::Refused: return "refused";
  }
  return "?";
}

PipelineOutcome run_pipeline(const Graph& g, const PipelineParams& p, std::uint64_t seed) {
  p.validate();
  const auto d = g.regular_degree();
  if (!d) throw ParameterError("the graph is not regular");
  const std::int64_t n = g.order();
  auto budgets = compute_budgets(n, *d, p.b, p.eps);
  if (budgets.delta_bound < 1) {
    throw ParameterError(fmt::format(
        "n={} is too small for b={}, eps={}: the correction window bound is {} < 1", n, p.b,
        p.eps, budgets.delta_bound));
  }
  u_probability(static_cast<Vertex>(n), p.b, p.eps);

  PipelineOutcome out;
  auto& rep = out.report;
  rep.add("status", "pending");  // overwritten at the end
  rep.add("n", n);
  rep.add("d", *d);
  rep.add("b", p.b);
  rep.add("eps", p.eps);
  rep.add("slack", p.slack);
  rep.add("mode", to_string(p.mode));
  rep.add("seed", seed);
  rep.add("max_retries", p.max_retries);
  const auto range = strict_range(static_cast<double>(n), p.b, p.eps);
  rep.add("strict_range.lo", range.lo);
  rep.add("strict_range.hi", range.hi);
  rep.add_bool("strict_range.nonempty", range.nonempty());
  rep.add_bool("strict_range.contains_d", range.contains(*d));
  rep.append_text("budgets.", budgets.to_text());
  out.budgets = budgets;

  auto finish = [&]() -> PipelineOutcome {
    rep.set("status", std::string(to_string(out.status)));
    return std::move(out);
  };

  if (p.mode == Mode::Strict && !range.contains(*d)) {
    out.status = PipelineOutcome::Status::Refused;
    out.failure_stage = "params";
    out.failure_condition = "strict_range";
    out.failure_witness = fmt::format("d={} outside [{}, {}]", *d, range.lo, range.hi);
    rep.add("failure.stage", out.failure_stage);
    rep.add("failure.condition", out.failure_condition);
    rep.add("failure.witness", out.failure_witness);
    return finish();
  }

  StageClock clock(out.timings);
  auto part = find_partition(g, p, seed);
  clock.lap("partition");
  rep.add("partition.attempts", part.attempts);
  rep.append_text("partition.", part.report.to_text());
  if (!part.ok()) {
    fail_conditions(out, "partition", part.report);
    return finish();
  }
  out.partition = std::move(part.value);
  const auto& vp = *out.partition;
  rep.add("u_size", vp.u_size());
  rep.add("v0_size", vp.v0_size());
  for (int i = 1; i <= VertexPartition::kClasses; ++i) {
    rep.add(fmt::format("class_size.{}", i), vp.class_size(i));
  }

  auto xs = find_x(g, vp, p, seed);
  clock.lap("labels");
  rep.add("labels.attempts", xs.attempts);
  rep.append_text("labels.", xs.report.to_text());
  if (!xs.ok()) {
    fail_conditions(out, "labels", xs.report);
    return finish();
  }
  out.x = std::move(xs.value);

  auto omega0 = initial_weighting(g, vp, *out.x, budgets);
  clock.lap("omega0");
  std::optional<OmegaPrimeResult> omega1;
  try {
    omega1 = assign_omega_prime(std::move(omega0), vp, *out.x, budgets, p.mode);
  } catch (const StageError& e) {
    clock.lap("omega1");
    fail(out, e.stage(), e.condition(), e.witness(), e.details());
    return finish();
  }
  clock.lap("omega1");
  out.feasibility = omega1->report;
  rep.append_text("omega1.", omega1->report.to_text());
  out.omega1_weights.assign(omega1->state.weights().begin(), omega1->state.weights().end());
  out.omega1_sigma.assign(omega1->state.sigmas().begin(), omega1->state.sigmas().end());

  std::optional<KkpResult> kkp;
  try {
    kkp = run_kkp(std::move(omega1->state), vp, budgets.kkp_step, p.mode);
  } catch (const StageError& e) {
    clock.lap("kkp");
    fail(out, e.stage(), e.condition(), e.witness(), e.details());
    return finish();
  }
  clock.lap("kkp");
  out.kkp = kkp->diagnostics;
  rep.append_text("kkp.", kkp->diagnostics.to_text());

  out.separation = separation_checks(kkp->state, vp, out.omega1_sigma);
  rep.append_text("separation.", out.separation->to_text());
  out.omega2 = kkp->state;
  if (!out.separation->passed()) {
    const auto* worst = out.separation->tightest_failure();
    fail(out, "separation", worst->id, worst->witness);
    return finish();
  }

  auto fin = finalize_and_check(std::move(kkp->state), budgets);
  clock.lap("finalize");
  rep.append_text("final.", fin.verification.to_text());
  rep.add("final.theorem_cap", budgets.theorem_cap());
  out.verification = fin.verification;
  out.final_state = std::move(fin.state);
  if (!out.verification->irregular) {
    fail(out, "verify", "not_irregular",
         fmt::format("sigma({}) = sigma({}) = {}", out.verification->witness->first,
                     out.verification->witness->second, out.verification->witness_sigma));
    return finish();
  }
  if (!out.verification->bound_ok) {
    fail(out, "verify", "label_cap",
         fmt::format("max label {} > {}", out.verification->max_label, budgets.label_cap()));
    return finish();
  }
  out.status = PipelineOutcome::Status::Success;
  return finish();
}

}  // namespace irreg
