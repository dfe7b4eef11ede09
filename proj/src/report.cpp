#include "irreg/report.hpp"

#include <cmath>
#include <limits>

namespace irreg {

void KeyValueReport::append_text(std::string_view prefix, std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) continue;
    lines_.emplace_back(std::string(prefix) + std::string(line.substr(0, eq)),
                        std::string(line.substr(eq + 1)));
  }
}

void KeyValueReport::set(std::string_view key, std::string value) {
  for (auto& [k, v] : lines_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  lines_.emplace_back(std::string(key), std::move(value));
}

const std::string* KeyValueReport::find(std::string_view key) const {
  for (const auto& [k, v] : lines_) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string KeyValueReport::to_text() const {
  std::string out;
  for (const auto& [k, v] : lines_) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  }
  return out;
}

bool ConditionReport::passed() const noexcept {
  for (const auto& e : entries) {
    if (!e.passed()) return false;
  }
  return true;
}

const ConditionEntry* ConditionReport::find(std::string_view id) const noexcept {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

const ConditionEntry* ConditionReport::tightest_failure() const noexcept {
  const ConditionEntry* best = nullptr;
  for (const auto& e : entries) {
    if (!e.passed() && (!best || e.rel_excess > best->rel_excess)) best = &e;
  }
  return best;
}

std::string ConditionReport::to_text(std::string_view prefix) const {
  std::string out = fmt::format("{}slack={}\n", prefix, slack);
  for (const auto& e : entries) {
    auto key = fmt::format("{}condition.{}", prefix, e.id);
    out += fmt::format("{}={}\n", key, e.passed() ? "pass" : "FAIL");
    out += fmt::format("{}.checked={}\n", key, e.checked);
    out += fmt::format("{}.violations={}\n", key, e.violations);
    if (e.checked > 0) {
      out += fmt::format("{}.worst={}\n", key, e.worst);
      out += fmt::format("{}.measured={}\n", key, e.measured);
      out += fmt::format("{}.bound={}\n", key, e.bound);
      out += fmt::format("{}.witness={}\n", key, e.witness);
    }
  }
  return out;
}

bool ConditionTally::observe(double measured, double bound) {
  ++entry_.checked;
  if (measured > bound) ++entry_.violations;
  double rel;
  if (bound > 0) {
    rel = (measured - bound) / bound;
  } else {
    rel = measured > bound ? std::numeric_limits<double>::infinity() : (measured - bound);
  }
  if (!any_ || rel > entry_.rel_excess) {
    any_ = true;
    entry_.rel_excess = rel;
    entry_.measured = measured;
    entry_.bound = bound;
    return true;
  }
  return false;
}

}  // namespace irreg
