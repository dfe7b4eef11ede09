#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "irreg/graph.hpp"
#include "irreg/kkp.hpp"
#include "irreg/labeling.hpp"
#include "irreg/params.hpp"
#include "irreg/partition.hpp"
#include "irreg/report.hpp"
#include "irreg/verify.hpp"
#include "irreg/weighting.hpp"

namespace irreg {

/// Named (b, eps) choices: "reference" (0.2, 0.05), "corollary1" (1, 1/12)
/// and "corollary2" (eps0/18, eps0/18). Other fields of `base` are kept.
/// Throws ParameterError on unknown names or eps0 <= 0.
PipelineParams apply_preset(std::string_view name, PipelineParams base, double eps0 = 1.0);

/// The degree window ln^{1+6b+12eps} n <= d <= n / ln^{2b+5eps} n.
struct StrictRange {
  double lo = 0;
  double hi = 0;
  bool nonempty() const noexcept { return lo <= hi; }
  bool contains(double d) const noexcept { return lo <= d && d <= hi; }
};

StrictRange strict_range(double n, double b, double eps);

struct StageTiming {
  std::string stage;
  double ms = 0;
};

/// Everything a run produced, kept for inspection by callers and tests.
struct PipelineOutcome {
  enum class Status { Success, Failed, Refused };
  Status status = Status::Failed;

  KeyValueReport report;
  std::string failure_stage;
  std::string failure_condition;
  std::string failure_witness;

  std::optional<Budgets> budgets;
  std::optional<VertexPartition> partition;
  std::optional<XAssignment> x;
  std::optional<FeasibilityReport> feasibility;
  std::vector<std::int64_t> omega1_weights;
  std::vector<std::int64_t> omega1_sigma;
  std::optional<KkpDiagnostics> kkp;
  std::optional<WeightingState> omega2;
  std::optional<ConditionReport> separation;
  std::optional<WeightingState> final_state;
  std::optional<VerificationResult> verification;

  /// Wall-clock per stage; kept out of the report so reports stay
  /// reproducible byte for byte.
  std::vector<StageTiming> timings;

  bool ok() const noexcept { return status == Status::Success; }
};

std::string_view to_string(PipelineOutcome::Status s) noexcept;

/// Runs partition, x labels, omega_0, omega_1, the KKP pass, separation
/// checks and the final shift on a regular graph.
///
/// Parameter problems (non-regular graph, invalid params, floor(n/(3d)) = 0,
/// delta_bound < 1) throw ParameterError before any sampling. In strict mode
/// a degree outside the strict range gives Status::Refused. Stage failures
/// are returned with Status::Failed and the stage, condition and witness in
/// both the outcome fields and the report.
PipelineOutcome run_pipeline(const Graph& g, const PipelineParams& p, std::uint64_t seed);

}  // namespace irreg
