#include "ransomguard/detector.hpp"

#include <algorithm>

#include "ransomguard/digest.hpp"
#include "ransomguard/error.hpp"

namespace ransomguard {

std::string_view to_string(DecisionKind k) noexcept {
  switch (k) {
    case DecisionKind::Continue: return "Continue";
    case DecisionKind::AlertUser: return "AlertUser";
    case DecisionKind::HaltExceptHoneypot: return "HaltExceptHoneypot";
  }
  return "?";
}

namespace {

// Steps one rule's partial matches over event `i`; returns true when the
// rule completes. `best[p]` is the latest start among partials awaiting
// pattern[p].
bool step_rule(const Rule& rule, std::vector<std::optional<std::size_t>>& best, EventKind kind,
               std::size_t i) {
  const auto& pattern = rule.pattern;
  const std::size_t len = pattern.size();

  if (rule.window) {
    for (auto& start : best) {
      if (start && i - *start + 1 > *rule.window) start.reset();
    }
  }

  const bool completes =
      (len == 1 && kind == pattern[0]) || (len > 1 && best[len - 1] && kind == pattern[len - 1]);

  // Descending so one event never fills two pattern positions.
  for (std::size_t p = len >= 2 ? len - 2 : 0; p >= 1 && p < len; --p) {
    if (best[p] && kind == pattern[p]) best[p + 1] = std::max(best[p + 1].value_or(0), *best[p]);
  }
  if (len > 1 && kind == pattern[0]) best[1] = i;
  return completes;
}

bool partials_grouped(const std::vector<PartialMatch>& partials, std::span<const Rule> rules) {
  std::size_t r = 0;
  for (const PartialMatch& pm : partials) {
    while (r < rules.size() && rules[r].rule_id != pm.rule_id) ++r;
    if (r == rules.size()) return false;
  }
  return true;
}

}  // namespace

Decision advance_in_place(MatchState& state, std::span<const Rule> rules, const SyscallEvent& event,
                          const PermissionPolicy& policy) {
  if (event.index != state.events_seen) throw OutOfOrderEvent(state.events_seen, event.index);

  Decision decision;
  decision.event_index = event.index;
  std::optional<std::string> halt_rule;
  std::optional<std::string> alert_rule;

  // States produced here list partials grouped in rule order, which allows
  // a single merge pass; anything else falls back to a full scan per rule.
  const bool grouped = partials_grouped(state.partials, rules);
  std::size_t cursor = 0;

  std::vector<PartialMatch> next_partials;
  std::vector<std::optional<std::size_t>> best;
  for (const Rule& rule : rules) {
    best.assign(rule.pattern.size(), std::nullopt);
    auto absorb = [&](const PartialMatch& pm) {
      if (pm.next < best.size()) best[pm.next] = std::max(best[pm.next].value_or(0), pm.start);
    };
    if (grouped) {
      for (; cursor < state.partials.size() && state.partials[cursor].rule_id == rule.rule_id; ++cursor) {
        absorb(state.partials[cursor]);
      }
    } else {
      for (const PartialMatch& pm : state.partials) {
        if (pm.rule_id == rule.rule_id) absorb(pm);
      }
    }
    if (step_rule(rule, best, event.kind, event.index)) {
      decision.completed_rules.push_back(rule.rule_id);
      auto& slot = rule.action == RuleAction::Halt ? halt_rule : alert_rule;
      if (!slot) slot = rule.rule_id;
    }
    for (std::size_t p = 1; p < best.size(); ++p) {
      if (best[p]) next_partials.push_back(PartialMatch{rule.rule_id, p, *best[p]});
    }
  }
  state.partials = std::move(next_partials);
  ++state.events_seen;

  const Tier tier = tier_of(event.kind);
  if (tier == Tier::Critical || halt_rule) {
    decision.kind = DecisionKind::HaltExceptHoneypot;
    decision.triggering_rule = halt_rule;
  } else if (tier == Tier::Suspicious || alert_rule) {
    decision.kind = DecisionKind::AlertUser;
    decision.triggering_rule = alert_rule;
    decision.permission = policy ? policy(event) : Permission::Allow;
  }
  return decision;
}

Transition advance(const MatchState& state, std::span<const Rule> rules, const SyscallEvent& event,
                   const PermissionPolicy& policy) {
  Transition t{state, {}};
  t.decision = advance_in_place(t.state, rules, event, policy);
  return t;
}

std::vector<Rule> seed_rules() {
  return {
      Rule{"R1", {EventKind::Fingerprint, EventKind::PortScan, EventKind::C2Connect}, std::nullopt,
           RuleAction::Alert},
      Rule{"R2", {EventKind::C2Connect, EventKind::EncryptionCall}, std::nullopt, RuleAction::Halt},
      Rule{"R3", {EventKind::BackupDelete, EventKind::EncryptionCall}, std::nullopt, RuleAction::Halt},
      Rule{"R4", {EventKind::KeyguardDisable, EventKind::DesktopControl}, std::nullopt, RuleAction::Halt},
  };
}

std::optional<Rule> extract_feedback_rule(std::span<const SyscallEvent> honeypot_trace,
                                          std::span<const Rule> active_rules) {
  const bool ransom = std::any_of(honeypot_trace.begin(), honeypot_trace.end(),
                                  [](const SyscallEvent& e) { return e.kind == EventKind::RansomDemand; });
  if (!ransom) throw PreconditionViolation("feedback extraction needs a ransomware trace");

  auto critical = std::find_if(honeypot_trace.begin(), honeypot_trace.end(), [](const SyscallEvent& e) {
    return tier_of(e.kind) == Tier::Critical;
  });
  if (critical == honeypot_trace.end()) throw NoCriticalEvent();

  Rule rule;
  rule.action = RuleAction::Halt;
  std::size_t first_index = critical->index;
  for (auto it = honeypot_trace.begin(); it != critical; ++it) {
    if (tier_of(it->kind) != Tier::Suspicious) continue;
    if (std::find(rule.pattern.begin(), rule.pattern.end(), it->kind) != rule.pattern.end()) continue;
    if (rule.pattern.size() == kFeedbackPrefixCap) break;
    if (rule.pattern.empty()) first_index = it->index;
    rule.pattern.push_back(it->kind);
  }
  rule.pattern.push_back(critical->kind);
  rule.window = critical->index - first_index + 1;

  std::string signature;
  for (EventKind k : rule.pattern) {
    if (!signature.empty()) signature += ',';
    signature += to_string(k);
  }
  rule.rule_id = "feedback-" + to_hex(sha256(signature)).substr(0, 12);

  for (const Rule& active : active_rules) {
    if (same_rule(active, rule)) return std::nullopt;
  }
  return rule;
}

}  // namespace ransomguard
