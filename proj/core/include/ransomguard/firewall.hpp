#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>

#include "ransomguard/model.hpp"

namespace ransomguard {

enum class MatchedField : std::uint8_t { Ip, Port, Extension };

struct IngressVerdict {
  enum class Decision : std::uint8_t { Pass, Blocked };

  Decision decision = Decision::Pass;
  std::optional<MatchedField> matched_field;

  bool blocked() const noexcept { return decision == Decision::Blocked; }

  friend bool operator==(const IngressVerdict&, const IngressVerdict&) = default;
};

std::string_view to_string(MatchedField f) noexcept;

// Gateway blacklist check for a network-entry sample. Evasive samples always
// pass. When several fields match, the report names Ip before Port before
// Extension. Throws PreconditionViolation for physical-entry samples.
IngressVerdict evaluate_ingress(const FirewallConfig& config, const SoftwareSample& sample);

// Stateful gateway wrapper that counts how often it was consulted.
class Firewall {
 public:
  explicit Firewall(FirewallConfig config) : config_(std::move(config)) {}

  IngressVerdict evaluate(const SoftwareSample& sample) {
    ++evaluations_;
    return evaluate_ingress(config_, sample);
  }

  std::size_t evaluations() const noexcept { return evaluations_; }
  const FirewallConfig& config() const noexcept { return config_; }

 private:
  FirewallConfig config_;
  std::size_t evaluations_ = 0;
};

}  // namespace ransomguard
