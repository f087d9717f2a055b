#include "ransomguard/rule.hpp"

#include "ransomguard/error.hpp"

namespace ransomguard {

std::string_view to_string(RuleAction a) noexcept { return a == RuleAction::Alert ? "Alert" : "Halt"; }

std::string_view to_string(RuleOrigin o) noexcept {
  return o == RuleOrigin::Seed ? "Seed" : "HoneypotFeedback";
}

void validate_rule(const Rule& rule) {
  if (rule.rule_id.empty()) throw InvalidRule("empty rule id");
  if (rule.pattern.empty()) throw InvalidRule(rule.rule_id + ": empty pattern");
  if (rule.window && *rule.window < rule.pattern.size()) {
    throw InvalidRule(rule.rule_id + ": window " + std::to_string(*rule.window) +
                      " shorter than pattern length " + std::to_string(rule.pattern.size()));
  }
  if (rule.action == RuleAction::Halt && tier_of(rule.pattern.back()) != Tier::Critical) {
    throw InvalidRule(rule.rule_id + ": halt rule must end in a critical event");
  }
}

bool same_rule(const Rule& a, const Rule& b) noexcept {
  return a.pattern == b.pattern && a.action == b.action;
}

}  // namespace ransomguard
