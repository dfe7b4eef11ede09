#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <fmt/format.h>

namespace irreg {

/// Ordered key=value lines. Everything the tools print goes through this so
/// reports stay diffable and byte-stable.
class KeyValueReport {
 public:
  template <class T>
  void add(std::string key, const T& value) {
    lines_.emplace_back(std::move(key), fmt::format("{}", value));
  }
  void add_bool(std::string key, bool value) { add(std::move(key), value ? "true" : "false"); }
  /// Replaces the value of an existing key in place, or appends.
  void set(std::string_view key, std::string value);
  /// Appends pre-rendered "k=v" lines, prefixing each key.
  void append_text(std::string_view prefix, std::string_view text);

  const std::vector<std::pair<std::string, std::string>>& lines() const { return lines_; }
  const std::string* find(std::string_view key) const;
  std::string to_text() const;

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

/// One inequality family evaluated over all its instances.
struct ConditionEntry {
  std::string id;
  std::int64_t checked = 0;
  std::int64_t violations = 0;
  std::string worst;  // instance with the largest relative excess
  double measured = 0;
  double bound = 0;
  double rel_excess = 0;  // (measured - bound) / bound at `worst`
  std::string witness;    // the worst instance with numbers filled in

  bool passed() const noexcept { return violations == 0; }
};

struct ConditionReport {
  double slack = 1.0;
  std::vector<ConditionEntry> entries;

  bool passed() const noexcept;
  const ConditionEntry* find(std::string_view id) const noexcept;
  /// Failing entry with the largest relative excess, nullptr if all pass.
  const ConditionEntry* tightest_failure() const noexcept;
  std::string to_text(std::string_view prefix = {}) const;
};

/// Builds a ConditionEntry instance by instance: `observe(measured, bound)`
/// counts a violation when measured > bound and tracks the worst instance.
class ConditionTally {
 public:
  explicit ConditionTally(std::string id) { entry_.id = std::move(id); }

  /// Returns true when this instance became the new worst; the caller then
  /// fills in the description via set_worst().
  bool observe(double measured, double bound);
  void set_worst(std::string where, std::string witness) {
    entry_.worst = std::move(where);
    entry_.witness = std::move(witness);
  }
  ConditionEntry take() { return std::move(entry_); }

 private:
  ConditionEntry entry_;
  bool any_ = false;
};

}  // namespace irreg
