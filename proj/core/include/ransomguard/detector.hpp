#pragma once

// Smart-contract rule engine. Every event is classified by tier and fed to
// an ordered-subsequence automaton over the active rules; the combined
// decision is produced before the event touches device state.
//
// Matching semantics: a rule completes on event i iff its pattern occurs as
// a subsequence of events [0, i] whose last element is event i and whose
// span (i - first matched index + 1) fits the rule window. Interleaved
// events never cancel a partial match. For each (rule, position) only the
// partial with the latest start is kept; it dominates every earlier one.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ransomguard/model.hpp"
#include "ransomguard/rule.hpp"

namespace ransomguard {

struct PartialMatch {
  std::string rule_id;
  std::size_t next = 1;   // pattern position awaiting a match, in [1, len)
  std::size_t start = 0;  // trace index of the first matched event

  friend bool operator==(const PartialMatch&, const PartialMatch&) = default;
};

struct MatchState {
  std::size_t events_seen = 0;
  std::vector<PartialMatch> partials;

  friend bool operator==(const MatchState&, const MatchState&) = default;
};

enum class DecisionKind : std::uint8_t { Continue, AlertUser, HaltExceptHoneypot };

std::string_view to_string(DecisionKind k) noexcept;

struct Decision {
  DecisionKind kind = DecisionKind::Continue;
  std::optional<std::string> triggering_rule;
  std::size_t event_index = 0;
  // The user's answer; only set for AlertUser.
  std::optional<Permission> permission;
  // Every rule that completed on this event, in rule order.
  std::vector<std::string> completed_rules;

  friend bool operator==(const Decision&, const Decision&) = default;
};

// Answers a permission prompt raised on `event`.
using PermissionPolicy = std::function<Permission(const SyscallEvent& event)>;

struct Transition {
  MatchState state;
  Decision decision;
};

// Pure transition. Throws OutOfOrderEvent unless event.index equals
// state.events_seen. An empty policy answers Allow.
Transition advance(const MatchState& state, std::span<const Rule> rules, const SyscallEvent& event,
                   const PermissionPolicy& policy);

// In-place variant used on hot paths; same semantics as advance().
Decision advance_in_place(MatchState& state, std::span<const Rule> rules, const SyscallEvent& event,
                          const PermissionPolicy& policy);

// R1..R4: the kill chain transcribed into sequence rules.
std::vector<Rule> seed_rules();

// New Halt rule learned from a honeypot-confirmed ransomware trace: the
// distinct Suspicious kinds before the first Critical event (first
// occurrence order, at most four), followed by that Critical kind. The
// window is the trace span from the first kept event to the Critical one.
// Returns nullopt when an identical rule is already active.
// Throws PreconditionViolation if the trace has no RansomDemand and
// NoCriticalEvent if it has no Critical event.
std::optional<Rule> extract_feedback_rule(std::span<const SyscallEvent> honeypot_trace,
                                          std::span<const Rule> active_rules);

inline constexpr std::size_t kFeedbackPrefixCap = 4;

}  // namespace ransomguard
