#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace irreg {

/// Invalid arguments: bad (n, d, b, eps), n*d odd, out-of-range vertices, ...
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed graph or weight file. `line` is 1-based (0 when unknown),
/// `offset` is a byte offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t offset)
      : std::runtime_error(msg), line_(line), offset_(offset) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t line_;
  std::size_t offset_;
};

/// Well-formed but inconsistent input, e.g. a weight file missing an edge.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Random generation gave up after its retry budget.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Irregularity strength is undefined for the graph.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Broken internal invariant. Always a bug or a corrupted state.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A pipeline stage could not complete. `stage` names the step, `condition`
/// the violated requirement, `witness` the instantiated numbers.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, std::string condition, std::string witness,
             std::string details = {})
      : std::runtime_error(stage + ": " + condition + ": " + witness),
        stage_(std::move(stage)),
        condition_(std::move(condition)),
        witness_(std::move(witness)),
        details_(std::move(details)) {}

  const std::string& stage() const noexcept { return stage_; }
  const std::string& condition() const noexcept { return condition_; }
  const std::string& witness() const noexcept { return witness_; }
  /// Flat key=value lines with stage diagnostics (may be empty).
  const std::string& details() const noexcept { return details_; }

 private:
  std::string stage_;
  std::string condition_;
  std::string witness_;
  std::string details_;
};

}  // namespace irreg
