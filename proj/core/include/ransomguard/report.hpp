#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ransomguard/digest.hpp"
#include "ransomguard/entry.hpp"
#include "ransomguard/error.hpp"
#include "ransomguard/firewall.hpp"
#include "ransomguard/model.hpp"
#include "ransomguard/registry.hpp"

namespace ransomguard {

enum class FinalStatus : std::uint8_t {
  CompletedBenign,
  BlockedAtFirewall,
  UninstalledRansomware,
  Quarantined,
  TerminatedByUser,
  // Target device failed authentication or lacks file access; nothing ran.
  RefusedAccess,
};

std::string_view to_string(FinalStatus s) noexcept;

struct AlertRecord {
  std::size_t index = 0;
  EventKind kind{};
  std::optional<std::string> rule_id;
  Permission answer = Permission::Allow;

  friend bool operator==(const AlertRecord&, const AlertRecord&) = default;
};

struct SampleOutcome {
  std::string sample_name;
  std::string target_device;
  // nullopt: physical entry, the gateway was bypassed.
  std::optional<IngressVerdict> firewall;
  std::optional<AccessReason> access;
  std::optional<std::size_t> device_halt_index;
  std::optional<std::string> halt_rule;
  std::optional<std::size_t> terminated_index;
  std::vector<AlertRecord> alerts;
  std::size_t events_applied_on_device = 0;
  std::optional<Verdict> honeypot_verdict;
  std::optional<std::string> honeypot_id;
  std::optional<std::size_t> ransom_index;
  std::size_t honeypot_events_observed = 0;
  FinalStatus final_status = FinalStatus::CompletedBenign;
  std::size_t files_encrypted_on_device = 0;
  std::size_t files_backed_up = 0;
  std::size_t files_restored = 0;
  std::size_t devices_uninstalled = 0;
  std::size_t rules_added = 0;
  std::optional<std::string> feedback_rule;

  friend bool operator==(const SampleOutcome&, const SampleOutcome&) = default;
};

struct RunReport {
  Digest scenario_digest{};
  std::uint64_t seed = 0;
  std::vector<SampleOutcome> samples;
  Digest edge_chain_digest{};
  std::size_t edge_chain_blocks = 0;
  Digest cloud_chain_digest{};
  std::size_t cloud_chain_blocks = 0;
  std::vector<std::string> active_rules;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

class MalformedReport : public Error {
 public:
  explicit MalformedReport(const std::string& what) : Error("malformed report: " + what) {}
};

// JSON with alphabetically ordered keys, two-space indent, trailing newline.
std::string serialize_report(const RunReport& report);

// Throws MalformedReport.
RunReport parse_report(std::string_view text);

// "<name> status=<FinalStatus> halt=<index|-> rules_added=<n>"
std::string summary_line(const SampleOutcome& outcome);

}  // namespace ransomguard
