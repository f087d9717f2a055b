#pragma once

// Shared domain vocabulary: the closed system-call alphabet, its tier table,
// software samples and the scenario description every module consumes.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ransomguard {

using Tick = std::uint64_t;

enum class EventKind : std::uint8_t {
  FileSearch,
  FileRead,
  FileWrite,
  FolderDelete,
  RegistryEdit,
  LogEdit,
  AdminPrivilegeRequest,
  RootAccess,
  OpenPortsQuery,
  OpenSessionsQuery,
  BrowsingHistoryRead,
  BookmarkRead,
  KernelInfoRead,
  PortScan,
  Fingerprint,
  C2Connect,
  EncryptionCall,
  TorConnect,
  KeyguardDisable,
  DesktopControl,
  RansomDemand,
  BackupDelete,
  TraceDelete,
};

inline constexpr std::size_t kEventKindCount = 23;

// Every EventKind in declaration order.
const std::array<EventKind, kEventKindCount>& all_event_kinds() noexcept;

enum class Tier : std::uint8_t { Benign, Suspicious, Critical, Terminal };

Tier tier_of(EventKind kind) noexcept;

std::string_view to_string(EventKind kind) noexcept;
std::string_view to_string(Tier tier) noexcept;
std::optional<EventKind> parse_event_kind(std::string_view name) noexcept;

// Kinds whose argument must name a file path.
bool requires_path(EventKind kind) noexcept;

struct SyscallEvent {
  EventKind kind{};
  std::optional<std::string> arg;
  std::size_t index = 0;

  friend bool operator==(const SyscallEvent&, const SyscallEvent&) = default;
};

enum class EntryPoint : std::uint8_t { Network, PhysicalDevice };

struct IngressMeta {
  std::string source_ip;
  std::uint32_t port = 0;
  std::string file_extension;

  friend bool operator==(const IngressMeta&, const IngressMeta&) = default;
};

enum class Permission : std::uint8_t { Allow, Deny };

struct SoftwareSample {
  std::string name;
  std::string target_device;
  EntryPoint entry = EntryPoint::Network;
  IngressMeta ingress;
  std::vector<SyscallEvent> trace;
  bool evasive = false;
  // Answers consumed in order by PerSampleScript policy, one per alert.
  std::vector<Permission> permission_script;

  friend bool operator==(const SoftwareSample&, const SoftwareSample&) = default;
};

// Ordered by capability: constrained < edge < honeypot.
enum class DeviceClass : std::uint8_t { Constrained, Edge, Honeypot };

enum class AccessScope : std::uint8_t { FileAccess, NetworkAccess };

// How a device presents itself to the registry.
enum class Enrollment : std::uint8_t {
  Registered,    // provisioned on the edge chain, presents its own key
  Unregistered,  // external device never provisioned
  WrongKey,      // claims a registered identity but holds a different key
};

struct DeviceSpec {
  std::string id;
  DeviceClass device_class = DeviceClass::Constrained;
  std::map<std::string, std::string> files;
  std::set<AccessScope> scopes{AccessScope::FileAccess, AccessScope::NetworkAccess};
  Enrollment enrollment = Enrollment::Registered;

  friend bool operator==(const DeviceSpec&, const DeviceSpec&) = default;
};

struct FirewallConfig {
  std::set<std::uint32_t> port_blacklist;
  std::set<std::string> ip_blacklist;
  std::set<std::string> extension_blacklist;

  friend bool operator==(const FirewallConfig&, const FirewallConfig&) = default;
};

enum class UserPolicy : std::uint8_t { AllowAll, DenyAll, PerSampleScript };

struct Scenario {
  std::vector<DeviceSpec> devices;
  FirewallConfig firewall;
  std::vector<SoftwareSample> samples;
  UserPolicy user_policy = UserPolicy::AllowAll;
  std::uint64_t seed = 0;
  std::uint32_t workstations = 1;

  const DeviceSpec* find_device(std::string_view id) const noexcept;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

std::string_view to_string(EntryPoint e) noexcept;
std::string_view to_string(DeviceClass c) noexcept;
std::string_view to_string(AccessScope s) noexcept;
std::string_view to_string(Enrollment e) noexcept;
std::string_view to_string(UserPolicy p) noexcept;
std::string_view to_string(Permission p) noexcept;

// Throws InvariantViolation naming the first broken invariant.
void validate(const Scenario& scenario);

bool is_dotted_quad(std::string_view text) noexcept;

// Builds a trace with consecutive indices from a list of (kind, arg) pairs.
std::vector<SyscallEvent> make_trace(
    std::initializer_list<std::pair<EventKind, std::optional<std::string>>> events);

// Monotone logical clock shared by every ledger write in one simulation.
class SimClock {
 public:
  Tick now() const noexcept { return tick_; }
  Tick next() noexcept { return ++tick_; }

 private:
  Tick tick_ = 0;
};

}  // namespace ransomguard
