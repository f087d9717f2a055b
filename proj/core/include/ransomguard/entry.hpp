#pragma once

// Typed ledger records and their canonical payload encoding.
//
// Payload = kind tag (u8) followed by the kind's fields in declaration
// order; text and byte fields are u64-BE length-prefixed, integers are
// u64-BE, enumerations are u8. A rule encodes as
//   rule_id | action | pattern count | pattern kind names | window | origin
// with kind names in their canonical spelling.

#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "ransomguard/digest.hpp"
#include "ransomguard/ledger.hpp"
#include "ransomguard/model.hpp"
#include "ransomguard/rule.hpp"

namespace ransomguard {

enum class EntryKind : std::uint8_t {
  DeviceRegistration = 1,
  RuleAdded = 2,
  BackupRecord = 3,
  VerdictRecord = 4,
};

enum class Verdict : std::uint8_t { Ransomware, NotRansomware };

std::string_view to_string(EntryKind k) noexcept;
std::string_view to_string(Verdict v) noexcept;

struct DeviceRegistration {
  std::string device_id;
  Digest public_commitment{};
  std::set<AccessScope> capabilities;

  friend bool operator==(const DeviceRegistration&, const DeviceRegistration&) = default;
};

struct RuleAdded {
  Rule rule;
  RuleOrigin origin = RuleOrigin::Seed;

  friend bool operator==(const RuleAdded&, const RuleAdded&) = default;
};

struct BackupRecord {
  std::string device_id;
  std::string path;
  Digest content_digest{};
  std::string content;
  Tick tick = 0;

  friend bool operator==(const BackupRecord&, const BackupRecord&) = default;
};

struct VerdictRecord {
  std::string sample_name;
  std::string honeypot_id;
  Verdict verdict = Verdict::NotRansomware;
  std::optional<std::uint64_t> ransom_index;
  std::optional<std::uint64_t> halt_index;

  friend bool operator==(const VerdictRecord&, const VerdictRecord&) = default;
};

using LedgerEntry = std::variant<DeviceRegistration, RuleAdded, BackupRecord, VerdictRecord>;

EntryKind kind_of(const LedgerEntry& entry) noexcept;

// Throws SerializationFailure when the entry breaks its own invariants
// (invalid rule, backup digest not matching content, empty identifiers).
Bytes encode_entry(const LedgerEntry& entry);

// Throws DecodeError on malformed payloads.
LedgerEntry decode_entry(std::span<const std::uint8_t> payload);

namespace ledger {

const Block& append(Chain& chain, const LedgerEntry& entry, Tick tick);

using EntryPredicate = std::function<bool(const LedgerEntry&)>;

// Entries of `kind` accepted by `predicate` (all of them when empty), in
// append order.
std::vector<LedgerEntry> query(const Chain& chain, EntryKind kind, const EntryPredicate& predicate = {});

// Typed convenience over query().
template <typename T>
std::vector<T> query_as(const Chain& chain, const std::function<bool(const T&)>& predicate = {}) {
  constexpr EntryKind kind = std::is_same_v<T, DeviceRegistration> ? EntryKind::DeviceRegistration
                             : std::is_same_v<T, RuleAdded>        ? EntryKind::RuleAdded
                             : std::is_same_v<T, BackupRecord>     ? EntryKind::BackupRecord
                                                                   : EntryKind::VerdictRecord;
  std::vector<T> out;
  for (LedgerEntry& e : query(chain, kind)) {
    T& typed = std::get<T>(e);
    if (!predicate || predicate(typed)) out.push_back(std::move(typed));
  }
  return out;
}

}  // namespace ledger
}  // namespace ransomguard
