#pragma once

// Edge smart contract: device registration, hash-commitment authentication,
// scope authorization and the authoritative rule store. All persistent
// state lives on the edge chain; the in-memory maps are caches rebuilt by
// replaying it.

#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ransomguard/digest.hpp"
#include "ransomguard/entry.hpp"
#include "ransomguard/ledger.hpp"
#include "ransomguard/model.hpp"
#include "ransomguard/rule.hpp"

namespace ransomguard {

// Key material generated on the device. Only `registration()` leaves the
// device; the secret key is never encoded into a ledger entry.
class DeviceIdentity {
 public:
  // Draws a 32-byte secret from a device-local generator seeded with
  // `entropy` and commits to it with SHA-256.
  static DeviceIdentity generate(std::string device_id, std::set<AccessScope> capabilities,
                                 std::uint64_t entropy);

  DeviceIdentity(std::string device_id, const Digest& secret_key, std::set<AccessScope> capabilities);

  const std::string& device_id() const noexcept { return device_id_; }
  const Digest& secret_key() const noexcept { return secret_key_; }
  const Digest& public_commitment() const noexcept { return public_commitment_; }
  const std::set<AccessScope>& capabilities() const noexcept { return capabilities_; }

  DeviceRegistration registration() const;

 private:
  std::string device_id_;
  Digest secret_key_;
  Digest public_commitment_;
  std::set<AccessScope> capabilities_;
};

enum class AccessReason : std::uint8_t { Registered, UnknownDevice, BadCredential, ScopeDenied };

std::string_view to_string(AccessReason r) noexcept;

struct AccessDecision {
  bool allowed = false;
  AccessReason reason = AccessReason::UnknownDevice;

  static AccessDecision granted() { return {true, AccessReason::Registered}; }
  static AccessDecision denied(AccessReason r) { return {false, r}; }

  friend bool operator==(const AccessDecision&, const AccessDecision&) = default;
};

class Registry {
 public:
  // Binds to `edge_chain` and rebuilds caches from its current contents.
  explicit Registry(ledger::Chain& edge_chain);

  // Throws DuplicateDevice.
  LedgerEntry register_device(const DeviceIdentity& identity, Tick tick);

  // Allowed iff the id is registered and SHA-256(proof) equals its stored
  // commitment. Success opens a session for the id.
  AccessDecision authenticate(std::string_view device_id, std::span<const std::uint8_t> proof);

  // Requires a session opened by authenticate(); registered devices without
  // one are reported as BadCredential.
  AccessDecision authorize(std::string_view device_id, AccessScope scope) const;

  bool is_authenticated(std::string_view device_id) const;
  void end_session(std::string_view device_id);

  // Throws InvalidRule for malformed rules, DuplicateRule when a
  // structurally equal rule (or one with the same id) is already active.
  LedgerEntry publish_rule(const Rule& rule, RuleOrigin origin, Tick tick);

  // Records a honeypot verdict on the edge chain.
  LedgerEntry publish_verdict(const VerdictRecord& verdict, Tick tick);

  const std::vector<Rule>& active_rules() const noexcept { return rules_; }
  bool is_registered(std::string_view device_id) const;
  const ledger::Chain& chain() const noexcept { return chain_; }

 private:
  ledger::Chain& chain_;
  std::map<std::string, DeviceRegistration, std::less<>> devices_;
  std::vector<Rule> rules_;
  std::set<std::string, std::less<>> sessions_;
};

// Pure functions of chain contents; Registry's caches must always agree.
std::vector<Rule> replay_active_rules(const ledger::Chain& chain);
std::map<std::string, DeviceRegistration, std::less<>> replay_registrations(const ledger::Chain& chain);

}  // namespace ransomguard
