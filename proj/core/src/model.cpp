#include "ransomguard/model.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_set>

#include "ransomguard/error.hpp"

namespace ransomguard {

const std::array<EventKind, kEventKindCount>& all_event_kinds() noexcept {
  static constexpr std::array<EventKind, kEventKindCount> kinds = {
      EventKind::FileSearch,        EventKind::FileRead,
      EventKind::FileWrite,         EventKind::FolderDelete,
      EventKind::RegistryEdit,      EventKind::LogEdit,
      EventKind::AdminPrivilegeRequest, EventKind::RootAccess,
      EventKind::OpenPortsQuery,    EventKind::OpenSessionsQuery,
      EventKind::BrowsingHistoryRead, EventKind::BookmarkRead,
      EventKind::KernelInfoRead,    EventKind::PortScan,
      EventKind::Fingerprint,       EventKind::C2Connect,
      EventKind::EncryptionCall,    EventKind::TorConnect,
      EventKind::KeyguardDisable,   EventKind::DesktopControl,
      EventKind::RansomDemand,      EventKind::BackupDelete,
      EventKind::TraceDelete,
  };
  return kinds;
}

Tier tier_of(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::FileSearch:
    case EventKind::FileRead:
    case EventKind::FileWrite:
    case EventKind::FolderDelete:
    case EventKind::RegistryEdit:
    case EventKind::LogEdit:
    case EventKind::AdminPrivilegeRequest:
    case EventKind::RootAccess:
    case EventKind::BackupDelete:
    case EventKind::TraceDelete:
      return Tier::Benign;
    case EventKind::OpenPortsQuery:
    case EventKind::OpenSessionsQuery:
    case EventKind::BrowsingHistoryRead:
    case EventKind::BookmarkRead:
    case EventKind::KernelInfoRead:
    case EventKind::PortScan:
    case EventKind::Fingerprint:
    case EventKind::C2Connect:
      return Tier::Suspicious;
    case EventKind::EncryptionCall:
    case EventKind::TorConnect:
    case EventKind::KeyguardDisable:
    case EventKind::DesktopControl:
      return Tier::Critical;
    case EventKind::RansomDemand:
      return Tier::Terminal;
  }
  // Unreachable for valid enumerators; -Wswitch-enum keeps the table total.
  return Tier::Benign;
}

std::string_view to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::FileSearch: return "FileSearch";
    case EventKind::FileRead: return "FileRead";
    case EventKind::FileWrite: return "FileWrite";
    case EventKind::FolderDelete: return "FolderDelete";
    case EventKind::RegistryEdit: return "RegistryEdit";
    case EventKind::LogEdit: return "LogEdit";
    case EventKind::AdminPrivilegeRequest: return "AdminPrivilegeRequest";
    case EventKind::RootAccess: return "RootAccess";
    case EventKind::OpenPortsQuery: return "OpenPortsQuery";
    case EventKind::OpenSessionsQuery: return "OpenSessionsQuery";
    case EventKind::BrowsingHistoryRead: return "BrowsingHistoryRead";
    case EventKind::BookmarkRead: return "BookmarkRead";
    case EventKind::KernelInfoRead: return "KernelInfoRead";
    case EventKind::PortScan: return "PortScan";
    case EventKind::Fingerprint: return "Fingerprint";
    case EventKind::C2Connect: return "C2Connect";
    case EventKind::EncryptionCall: return "EncryptionCall";
    case EventKind::TorConnect: return "TorConnect";
    case EventKind::KeyguardDisable: return "KeyguardDisable";
    case EventKind::DesktopControl: return "DesktopControl";
    case EventKind::RansomDemand: return "RansomDemand";
    case EventKind::BackupDelete: return "BackupDelete";
    case EventKind::TraceDelete: return "TraceDelete";
  }
  return "?";
}

std::string_view to_string(Tier tier) noexcept {
  switch (tier) {
    case Tier::Benign: return "Benign";
    case Tier::Suspicious: return "Suspicious";
    case Tier::Critical: return "Critical";
    case Tier::Terminal: return "Terminal";
  }
  return "?";
}

std::optional<EventKind> parse_event_kind(std::string_view name) noexcept {
  for (EventKind k : all_event_kinds()) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

bool requires_path(EventKind kind) noexcept {
  return kind == EventKind::EncryptionCall || kind == EventKind::FileRead ||
         kind == EventKind::FileWrite || kind == EventKind::FolderDelete;
}

std::string_view to_string(EntryPoint e) noexcept {
  return e == EntryPoint::Network ? "Network" : "PhysicalDevice";
}

std::string_view to_string(DeviceClass c) noexcept {
  switch (c) {
    case DeviceClass::Constrained: return "Constrained";
    case DeviceClass::Edge: return "Edge";
    case DeviceClass::Honeypot: return "Honeypot";
  }
  return "?";
}

std::string_view to_string(AccessScope s) noexcept {
  return s == AccessScope::FileAccess ? "FileAccess" : "NetworkAccess";
}

std::string_view to_string(Enrollment e) noexcept {
  switch (e) {
    case Enrollment::Registered: return "Registered";
    case Enrollment::Unregistered: return "Unregistered";
    case Enrollment::WrongKey: return "WrongKey";
  }
  return "?";
}

std::string_view to_string(UserPolicy p) noexcept {
  switch (p) {
    case UserPolicy::AllowAll: return "AllowAll";
    case UserPolicy::DenyAll: return "DenyAll";
    case UserPolicy::PerSampleScript: return "PerSampleScript";
  }
  return "?";
}

std::string_view to_string(Permission p) noexcept {
  return p == Permission::Allow ? "Allow" : "Deny";
}

const DeviceSpec* Scenario::find_device(std::string_view id) const noexcept {
  auto it = std::find_if(devices.begin(), devices.end(),
                         [&](const DeviceSpec& d) { return d.id == id; });
  return it == devices.end() ? nullptr : &*it;
}

bool is_dotted_quad(std::string_view text) noexcept {
  int octets = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t dot = text.find('.', pos);
    if (dot == std::string_view::npos) dot = text.size();
    std::string_view part = text.substr(pos, dot - pos);
    if (part.empty() || part.size() > 3) return false;
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc{} || ptr != part.data() + part.size() || value > 255) return false;
    ++octets;
    pos = dot + 1;
    if (dot == text.size()) break;
  }
  return octets == 4;
}

namespace {

void validate_sample(const Scenario& scenario, const SoftwareSample& s) {
  const std::string who = "sample '" + s.name + "'";
  if (s.name.empty()) throw InvariantViolation("sample with empty name");
  if (s.trace.empty()) throw InvariantViolation(who + " has an empty trace");
  for (std::size_t i = 0; i < s.trace.size(); ++i) {
    const SyscallEvent& e = s.trace[i];
    if (e.index != i) {
      throw InvariantViolation(who + " event indices are not consecutive at position " +
                               std::to_string(i));
    }
    if (requires_path(e.kind) && (!e.arg || e.arg->empty())) {
      throw InvariantViolation(who + " event " + std::to_string(i) + " (" +
                               std::string(to_string(e.kind)) + ") needs a path argument");
    }
  }
  if (s.ingress.port > 65535) {
    throw InvariantViolation(who + " ingress port " + std::to_string(s.ingress.port) +
                             " outside 0-65535");
  }
  if (!s.ingress.source_ip.empty() && !is_dotted_quad(s.ingress.source_ip)) {
    throw InvariantViolation(who + " source_ip is not a dotted quad");
  }
  const std::string& ext = s.ingress.file_extension;
  if (!ext.empty() && ext.front() == '.') {
    throw InvariantViolation(who + " file extension has a leading dot");
  }
  if (std::any_of(ext.begin(), ext.end(), [](unsigned char c) { return c >= 'A' && c <= 'Z'; })) {
    throw InvariantViolation(who + " file extension is not lowercase");
  }
  const DeviceSpec* target = scenario.find_device(s.target_device);
  if (target == nullptr) {
    throw InvariantViolation(who + " targets unknown device '" + s.target_device + "'");
  }
  if (target->device_class == DeviceClass::Honeypot) {
    throw InvariantViolation(who + " targets honeypot '" + s.target_device + "'");
  }
}

}  // namespace

void validate(const Scenario& scenario) {
  std::unordered_set<std::string> ids;
  bool have_honeypot = false;
  for (const DeviceSpec& d : scenario.devices) {
    if (d.id.empty()) throw InvariantViolation("device with empty id");
    if (!ids.insert(d.id).second) throw InvariantViolation("duplicate device id '" + d.id + "'");
    if (d.device_class == DeviceClass::Honeypot) {
      have_honeypot = true;
      if (d.enrollment != Enrollment::Registered) {
        throw InvariantViolation("honeypot '" + d.id + "' must be registered");
      }
    }
  }
  if (!have_honeypot) throw InvariantViolation("scenario has no honeypot device");
  if (scenario.workstations < 1) throw InvariantViolation("workstations must be >= 1");

  for (std::uint32_t port : scenario.firewall.port_blacklist) {
    if (port > 65535) {
      throw InvariantViolation("firewall port " + std::to_string(port) + " outside 0-65535");
    }
  }
  for (const std::string& ip : scenario.firewall.ip_blacklist) {
    if (!is_dotted_quad(ip)) throw InvariantViolation("firewall ip '" + ip + "' is not a dotted quad");
  }
  for (const std::string& ext : scenario.firewall.extension_blacklist) {
    if (ext.empty() || ext.front() == '.' ||
        std::any_of(ext.begin(), ext.end(), [](unsigned char c) { return c >= 'A' && c <= 'Z'; })) {
      throw InvariantViolation("firewall extension '" + ext + "' must be lowercase without a dot");
    }
  }

  std::unordered_set<std::string> names;
  for (const SoftwareSample& s : scenario.samples) {
    validate_sample(scenario, s);
    if (!names.insert(s.name).second) throw InvariantViolation("duplicate sample name '" + s.name + "'");
  }
}

std::vector<SyscallEvent> make_trace(
    std::initializer_list<std::pair<EventKind, std::optional<std::string>>> events) {
  std::vector<SyscallEvent> trace;
  trace.reserve(events.size());
  for (const auto& [kind, arg] : events) {
    trace.push_back(SyscallEvent{kind, arg, trace.size()});
  }
  return trace;
}

}  // namespace ransomguard
