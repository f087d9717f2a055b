#include "ransomguard/report.hpp"

#include <array>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ransomguard {
namespace {

using nlohmann::json;

template <typename T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json digest_json(const Digest& d) { return to_hex(d); }

json firewall_json(const std::optional<IngressVerdict>& v) {
  if (!v) return {{"decision", "Bypassed"}, {"matched_field", nullptr}};
  return {{"decision", v->blocked() ? "Blocked" : "Pass"},
          {"matched_field", v->matched_field ? json(to_string(*v->matched_field)) : json(nullptr)}};
}

json outcome_json(const SampleOutcome& o) {
  json alerts = json::array();
  for (const AlertRecord& a : o.alerts) {
    alerts.push_back({{"index", a.index},
                      {"kind", to_string(a.kind)},
                      {"rule", opt(a.rule_id)},
                      {"answer", to_string(a.answer)}});
  }
  return {
      {"sample_name", o.sample_name},
      {"target_device", o.target_device},
      {"firewall", firewall_json(o.firewall)},
      {"access", o.access ? json(to_string(*o.access)) : json(nullptr)},
      {"device_halt_index", opt(o.device_halt_index)},
      {"halt_rule", opt(o.halt_rule)},
      {"terminated_index", opt(o.terminated_index)},
      {"alerts", std::move(alerts)},
      {"events_applied_on_device", o.events_applied_on_device},
      {"honeypot_verdict", o.honeypot_verdict ? json(to_string(*o.honeypot_verdict)) : json(nullptr)},
      {"honeypot_id", opt(o.honeypot_id)},
      {"ransom_index", opt(o.ransom_index)},
      {"honeypot_events_observed", o.honeypot_events_observed},
      {"final_status", to_string(o.final_status)},
      {"files_encrypted_on_device", o.files_encrypted_on_device},
      {"files_backed_up", o.files_backed_up},
      {"files_restored", o.files_restored},
      {"devices_uninstalled", o.devices_uninstalled},
      {"rules_added", o.rules_added},
      {"feedback_rule", opt(o.feedback_rule)},
  };
}

// Reading side: every accessor throws MalformedReport with the field name.
const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw MalformedReport(std::string("missing '") + key + "'");
  return obj.at(key);
}

std::string get_string(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_string()) throw MalformedReport(std::string("'") + key + "' is not a string");
  return v.get<std::string>();
}

std::size_t get_count(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_number_unsigned()) throw MalformedReport(std::string("'") + key + "' is not a count");
  return v.get<std::size_t>();
}

std::optional<std::size_t> get_opt_count(const json& obj, const char* key) {
  if (field(obj, key).is_null()) return std::nullopt;
  return get_count(obj, key);
}

std::optional<std::string> get_opt_string(const json& obj, const char* key) {
  if (field(obj, key).is_null()) return std::nullopt;
  return get_string(obj, key);
}

Digest get_digest(const json& obj, const char* key) {
  std::string hex = get_string(obj, key);
  Digest d{};
  if (hex.size() != d.size() * 2) throw MalformedReport(std::string("'") + key + "' is not a digest");
  auto nibble = [&](char c) -> std::uint8_t {
    if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
    throw MalformedReport(std::string("'") + key + "' has a non-hex digit");
  };
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return d;
}

template <typename Enum, std::size_t N>
Enum get_enum(const std::string& text, const std::array<Enum, N>& values, const char* key) {
  for (Enum v : values) {
    if (to_string(v) == text) return v;
  }
  throw MalformedReport(std::string("'") + key + "' has unknown value '" + text + "'");
}

template <typename Enum, std::size_t N>
std::optional<Enum> get_opt_enum(const json& obj, const char* key, const std::array<Enum, N>& values) {
  auto text = get_opt_string(obj, key);
  if (!text) return std::nullopt;
  return get_enum(*text, values, key);
}

SampleOutcome parse_outcome(const json& j) {
  SampleOutcome o;
  o.sample_name = get_string(j, "sample_name");
  o.target_device = get_string(j, "target_device");

  const json& fw = field(j, "firewall");
  const std::string decision = get_string(fw, "decision");
  if (decision != "Bypassed") {
    IngressVerdict v;
    v.decision = decision == "Blocked" ? IngressVerdict::Decision::Blocked
                                       : (decision == "Pass" ? IngressVerdict::Decision::Pass
                                                             : throw MalformedReport("bad firewall decision"));
    v.matched_field = get_opt_enum(fw, "matched_field",
                                   std::array{MatchedField::Ip, MatchedField::Port, MatchedField::Extension});
    o.firewall = v;
  }
  o.access = get_opt_enum(j, "access",
                          std::array{AccessReason::Registered, AccessReason::UnknownDevice,
                                     AccessReason::BadCredential, AccessReason::ScopeDenied});
  o.device_halt_index = get_opt_count(j, "device_halt_index");
  o.halt_rule = get_opt_string(j, "halt_rule");
  o.terminated_index = get_opt_count(j, "terminated_index");

  const json& alerts = field(j, "alerts");
  if (!alerts.is_array()) throw MalformedReport("'alerts' is not an array");
  for (const json& a : alerts) {
    AlertRecord rec;
    rec.index = get_count(a, "index");
    auto kind = parse_event_kind(get_string(a, "kind"));
    if (!kind) throw MalformedReport("alert has unknown event kind");
    rec.kind = *kind;
    rec.rule_id = get_opt_string(a, "rule");
    rec.answer = get_enum(get_string(a, "answer"), std::array{Permission::Allow, Permission::Deny}, "answer");
    o.alerts.push_back(std::move(rec));
  }
  o.events_applied_on_device = get_count(j, "events_applied_on_device");
  o.honeypot_verdict =
      get_opt_enum(j, "honeypot_verdict", std::array{Verdict::Ransomware, Verdict::NotRansomware});
  o.honeypot_id = get_opt_string(j, "honeypot_id");
  o.ransom_index = get_opt_count(j, "ransom_index");
  o.honeypot_events_observed = get_count(j, "honeypot_events_observed");
  o.final_status = get_enum(get_string(j, "final_status"),
                            std::array{FinalStatus::CompletedBenign, FinalStatus::BlockedAtFirewall,
                                       FinalStatus::UninstalledRansomware, FinalStatus::Quarantined,
                                       FinalStatus::TerminatedByUser, FinalStatus::RefusedAccess},
                            "final_status");
  o.files_encrypted_on_device = get_count(j, "files_encrypted_on_device");
  o.files_backed_up = get_count(j, "files_backed_up");
  o.files_restored = get_count(j, "files_restored");
  o.devices_uninstalled = get_count(j, "devices_uninstalled");
  o.rules_added = get_count(j, "rules_added");
  o.feedback_rule = get_opt_string(j, "feedback_rule");
  return o;
}

}  // namespace

std::string_view to_string(FinalStatus s) noexcept {
  switch (s) {
    case FinalStatus::CompletedBenign: return "CompletedBenign";
    case FinalStatus::BlockedAtFirewall: return "BlockedAtFirewall";
    case FinalStatus::UninstalledRansomware: return "UninstalledRansomware";
    case FinalStatus::Quarantined: return "Quarantined";
    case FinalStatus::TerminatedByUser: return "TerminatedByUser";
    case FinalStatus::RefusedAccess: return "RefusedAccess";
  }
  return "?";
}

std::string serialize_report(const RunReport& report) {
  json samples = json::array();
  for (const SampleOutcome& o : report.samples) samples.push_back(outcome_json(o));
  json doc = {
      {"scenario_digest", digest_json(report.scenario_digest)},
      {"seed", report.seed},
      {"samples", std::move(samples)},
      {"edge_chain_digest", digest_json(report.edge_chain_digest)},
      {"edge_chain_blocks", report.edge_chain_blocks},
      {"cloud_chain_digest", digest_json(report.cloud_chain_digest)},
      {"cloud_chain_blocks", report.cloud_chain_blocks},
      {"active_rules", report.active_rules},
  };
  return doc.dump(2) + "\n";
}

RunReport parse_report(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw MalformedReport(e.what());
  }
  if (!doc.is_object()) throw MalformedReport("top level is not an object");

  RunReport r;
  r.scenario_digest = get_digest(doc, "scenario_digest");
  const json& seed = field(doc, "seed");
  if (!seed.is_number_unsigned()) throw MalformedReport("'seed' is not unsigned");
  r.seed = seed.get<std::uint64_t>();
  const json& samples = field(doc, "samples");
  if (!samples.is_array()) throw MalformedReport("'samples' is not an array");
  for (const json& s : samples) r.samples.push_back(parse_outcome(s));
  r.edge_chain_digest = get_digest(doc, "edge_chain_digest");
  r.edge_chain_blocks = get_count(doc, "edge_chain_blocks");
  r.cloud_chain_digest = get_digest(doc, "cloud_chain_digest");
  r.cloud_chain_blocks = get_count(doc, "cloud_chain_blocks");
  const json& rules = field(doc, "active_rules");
  if (!rules.is_array()) throw MalformedReport("'active_rules' is not an array");
  for (const json& id : rules) {
    if (!id.is_string()) throw MalformedReport("rule id is not a string");
    r.active_rules.push_back(id.get<std::string>());
  }
  return r;
}

std::string summary_line(const SampleOutcome& o) {
  std::ostringstream out;
  out << o.sample_name << " status=" << to_string(o.final_status) << " halt=";
  if (o.device_halt_index) {
    out << *o.device_halt_index;
  } else {
    out << '-';
  }
  out << " rules_added=" << o.rules_added;
  return out.str();
}

}  // namespace ransomguard
