#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace irreg {

/// strict: every inequality and option threshold exactly as in the
/// construction. empirical: windows scaled by `slack`, endgame thresholds
/// replaced by "some valid choice exists".
enum class Mode { Strict, Empirical };

std::string_view to_string(Mode m) noexcept;
/// Throws ParameterError on unknown names.
Mode parse_mode(std::string_view name);

struct PipelineParams {
  double b = 0.2;
  double eps = 0.05;
  double slack = 1.0;
  int max_retries = 100;
  Mode mode = Mode::Empirical;

  /// b > 0, eps > 0, max_retries >= 0; slack == 1 in strict mode and
  /// slack >= 1 in empirical mode. Throws ParameterError.
  void validate() const;
};

/// ln(n)^e, the building block of every window and budget.
inline double ln_pow(double n, double e) { return std::pow(std::log(n), e); }

}  // namespace irreg
