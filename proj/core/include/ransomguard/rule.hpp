#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ransomguard/model.hpp"

namespace ransomguard {

enum class RuleAction : std::uint8_t { Alert, Halt };

enum class RuleOrigin : std::uint8_t { Seed, HoneypotFeedback };

// Ordered-subsequence pattern over event kinds. `window` bounds the trace
// span (last index - first index + 1) a match may cover.
struct Rule {
  std::string rule_id;
  std::vector<EventKind> pattern;
  std::optional<std::size_t> window;
  RuleAction action = RuleAction::Alert;

  friend bool operator==(const Rule&, const Rule&) = default;
};

std::string_view to_string(RuleAction a) noexcept;
std::string_view to_string(RuleOrigin o) noexcept;

// Throws InvalidRule: empty pattern, window shorter than the pattern, or a
// Halt rule whose last kind is not Critical-tier.
void validate_rule(const Rule& rule);

// Rule identity for duplicate detection: same pattern and action. The id
// and window do not participate.
bool same_rule(const Rule& a, const Rule& b) noexcept;

}  // namespace ransomguard
