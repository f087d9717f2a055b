#pragma once

// Cloud backup chain behind a round-robin load balancer. Each workstation
// keeps a replica of the cloud chain; the chain appends to every replica
// synchronously, so replicas agree whenever a request completes.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ransomguard/device.hpp"
#include "ransomguard/entry.hpp"
#include "ransomguard/ledger.hpp"
#include "ransomguard/registry.hpp"

namespace ransomguard {

struct Workstation {
  std::uint32_t ws_id = 0;
  std::uint64_t handled = 0;
};

// Round-robin: request `ordinal` goes to ordinal mod count. Increments the
// chosen workstation's counter. Throws NoWorkstations.
std::uint32_t route(std::uint64_t ordinal, std::span<Workstation> workstations);

class CloudBackup {
 public:
  explicit CloudBackup(std::uint32_t workstations);

  // One routed request. Appends one BackupRecord per file. Throws
  // AuthFailure unless the registry holds a session for the device.
  std::vector<BackupRecord> backup_snapshot(std::string_view device_id, const FileMap& files,
                                            const Registry& registry, SimClock& clock);

  // One routed request. Writes the newest record of every backed-up path
  // back into `files` and returns how many paths were restored. Throws
  // AuthFailure, or CorruptChain when the cloud chain fails verification
  // or a record's content no longer matches its digest.
  std::size_t restore(std::string_view device_id, FileMap& files, const Registry& registry);

  const ledger::Chain& chain() const noexcept { return chain_; }
  ledger::Chain& chain_for_fault_injection() noexcept { return chain_; }

  std::span<const Workstation> workstations() const noexcept { return workstations_; }
  std::span<const ledger::Block> replica(std::uint32_t ws_id) const { return chain_.replica(ws_id); }
  std::uint64_t requests() const noexcept { return requests_; }
  // Workstation chosen for each request so far, in order.
  const std::vector<std::uint32_t>& assignments() const noexcept { return assignments_; }

 private:
  std::uint32_t route_request();

  ledger::Chain chain_;
  std::vector<Workstation> workstations_;
  std::vector<std::uint32_t> assignments_;
  std::uint64_t requests_ = 0;
};

}  // namespace ransomguard
