#include "ransomguard/firewall.hpp"

#include "ransomguard/error.hpp"

namespace ransomguard {

std::string_view to_string(MatchedField f) noexcept {
  switch (f) {
    case MatchedField::Ip: return "Ip";
    case MatchedField::Port: return "Port";
    case MatchedField::Extension: return "Extension";
  }
  return "?";
}

IngressVerdict evaluate_ingress(const FirewallConfig& config, const SoftwareSample& sample) {
  if (sample.entry != EntryPoint::Network) {
    throw PreconditionViolation("firewall only screens network-entry samples ('" + sample.name + "')");
  }
  if (sample.evasive) return {};

  const IngressMeta& meta = sample.ingress;
  std::optional<MatchedField> hit;
  if (config.ip_blacklist.contains(meta.source_ip)) {
    hit = MatchedField::Ip;
  } else if (config.port_blacklist.contains(meta.port)) {
    hit = MatchedField::Port;
  } else if (config.extension_blacklist.contains(meta.file_extension)) {
    hit = MatchedField::Extension;
  }
  if (!hit) return {};
  return IngressVerdict{IngressVerdict::Decision::Blocked, hit};
}

}  // namespace ransomguard
