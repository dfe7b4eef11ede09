#include "irreg/params.hpp"

#include <string>

#include <fmt/format.h>

#include "irreg/errors.hpp"

namespace irreg {

std::string_view to_string(Mode m) noexcept {
  return m == Mode::Strict ? "strict" : "empirical";
}

Mode parse_mode(std::string_view name) {
  if (name == "strict") return Mode::Strict;
  if (name == "empirical") return Mode::Empirical;
  throw ParameterError(fmt::format("unknown mode '{}'", name));
}

void PipelineParams::validate() const {
  if (!(b > 0) || !std::isfinite(b)) throw ParameterError(fmt::format("b must be > 0, got {}", b));
  if (!(eps > 0) || !std::isfinite(eps)) {
    throw ParameterError(fmt::format("eps must be > 0, got {}", eps));
  }
  if (max_retries < 0) throw ParameterError("max_retries must be >= 0");
  if (mode == Mode::Strict && slack != 1.0) {
    throw ParameterError(fmt::format("strict mode requires slack = 1, got {}", slack));
  }
  if (mode == Mode::Empirical && !(slack >= 1.0)) {
    throw ParameterError(fmt::format("empirical mode requires slack >= 1, got {}", slack));
  }
}

}  // namespace irreg
