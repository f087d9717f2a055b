#include "ransomguard/registry.hpp"

#include <algorithm>
#include <random>

#include "ransomguard/error.hpp"

namespace ransomguard {

DeviceIdentity DeviceIdentity::generate(std::string device_id, std::set<AccessScope> capabilities,
                                        std::uint64_t entropy) {
  std::mt19937_64 rng(entropy);
  Digest secret{};
  for (std::size_t i = 0; i < secret.size(); i += 8) {
    std::uint64_t word = rng();
    for (std::size_t j = 0; j < 8; ++j) secret[i + j] = static_cast<std::uint8_t>(word >> (8 * j));
  }
  return DeviceIdentity(std::move(device_id), secret, std::move(capabilities));
}

DeviceIdentity::DeviceIdentity(std::string device_id, const Digest& secret_key,
                               std::set<AccessScope> capabilities)
    : device_id_(std::move(device_id)),
      secret_key_(secret_key),
      public_commitment_(sha256(secret_key)),
      capabilities_(std::move(capabilities)) {}

DeviceRegistration DeviceIdentity::registration() const {
  return DeviceRegistration{device_id_, public_commitment_, capabilities_};
}

std::string_view to_string(AccessReason r) noexcept {
  switch (r) {
    case AccessReason::Registered: return "Registered";
    case AccessReason::UnknownDevice: return "UnknownDevice";
    case AccessReason::BadCredential: return "BadCredential";
    case AccessReason::ScopeDenied: return "ScopeDenied";
  }
  return "?";
}

std::vector<Rule> replay_active_rules(const ledger::Chain& chain) {
  std::vector<Rule> rules;
  for (RuleAdded& r : ledger::query_as<RuleAdded>(chain)) rules.push_back(std::move(r.rule));
  return rules;
}

std::map<std::string, DeviceRegistration, std::less<>> replay_registrations(const ledger::Chain& chain) {
  std::map<std::string, DeviceRegistration, std::less<>> out;
  for (DeviceRegistration& d : ledger::query_as<DeviceRegistration>(chain)) {
    std::string id = d.device_id;
    out.emplace(std::move(id), std::move(d));
  }
  return out;
}

Registry::Registry(ledger::Chain& edge_chain)
    : chain_(edge_chain),
      devices_(replay_registrations(edge_chain)),
      rules_(replay_active_rules(edge_chain)) {}

LedgerEntry Registry::register_device(const DeviceIdentity& identity, Tick tick) {
  if (devices_.contains(identity.device_id())) throw DuplicateDevice(identity.device_id());
  LedgerEntry entry = identity.registration();
  ledger::append(chain_, entry, tick);
  devices_.emplace(identity.device_id(), std::get<DeviceRegistration>(entry));
  return entry;
}

AccessDecision Registry::authenticate(std::string_view device_id, std::span<const std::uint8_t> proof) {
  auto it = devices_.find(device_id);
  if (it == devices_.end()) return AccessDecision::denied(AccessReason::UnknownDevice);
  if (proof.size() != Digest{}.size() || sha256(proof) != it->second.public_commitment) {
    return AccessDecision::denied(AccessReason::BadCredential);
  }
  sessions_.emplace(device_id);
  return AccessDecision::granted();
}

AccessDecision Registry::authorize(std::string_view device_id, AccessScope scope) const {
  auto it = devices_.find(device_id);
  if (it == devices_.end()) return AccessDecision::denied(AccessReason::UnknownDevice);
  if (!sessions_.contains(device_id)) return AccessDecision::denied(AccessReason::BadCredential);
  if (!it->second.capabilities.contains(scope)) return AccessDecision::denied(AccessReason::ScopeDenied);
  return AccessDecision::granted();
}

bool Registry::is_authenticated(std::string_view device_id) const { return sessions_.contains(device_id); }

void Registry::end_session(std::string_view device_id) {
  if (auto it = sessions_.find(device_id); it != sessions_.end()) sessions_.erase(it);
}

bool Registry::is_registered(std::string_view device_id) const { return devices_.contains(device_id); }

LedgerEntry Registry::publish_rule(const Rule& rule, RuleOrigin origin, Tick tick) {
  validate_rule(rule);
  for (const Rule& active : rules_) {
    if (same_rule(active, rule) || active.rule_id == rule.rule_id) throw DuplicateRule(rule.rule_id);
  }
  LedgerEntry entry = RuleAdded{rule, origin};
  ledger::append(chain_, entry, tick);
  rules_.push_back(rule);
  return entry;
}

LedgerEntry Registry::publish_verdict(const VerdictRecord& verdict, Tick tick) {
  LedgerEntry entry = verdict;
  ledger::append(chain_, entry, tick);
  return entry;
}

}  // namespace ransomguard
