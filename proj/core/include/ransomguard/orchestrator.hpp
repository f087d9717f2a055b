#pragma once

// Discrete-event simulation of the full prevention workflow. Per sample, in
// scenario order:
//   1. network entries are screened by the gateway firewall
//   2. the target device authenticates against the edge registry
//   3. a baseline snapshot goes to the cloud backup chain
//   4. twin execution: for each event the detector decides first, then the
//      honeypot applies the event to its sandbox
//   5. a halt freezes the device side; the honeypot still runs to the end
//   6. a Ransomware verdict uninstalls the sample, records the verdict and
//      any learned rule on the edge chain and restores the target device
// Every ledger write takes a fresh tick from one SimClock.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ransomguard/backup.hpp"
#include "ransomguard/detector.hpp"
#include "ransomguard/device.hpp"
#include "ransomguard/firewall.hpp"
#include "ransomguard/honeypot.hpp"
#include "ransomguard/ledger.hpp"
#include "ransomguard/model.hpp"
#include "ransomguard/registry.hpp"
#include "ransomguard/report.hpp"

namespace ransomguard {

class Simulation {
 public:
  // Validates the scenario, provisions devices (keys are generated per
  // device), registers enrolled devices and publishes the seed rules.
  explicit Simulation(Scenario scenario);

  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  // Processes every sample once and returns the report. Calling it again
  // throws PreconditionViolation.
  RunReport run();

  // Removes the sample from every non-honeypot device it was installed on.
  // Returns the number of devices cleaned; idempotent.
  std::size_t uninstall(std::string_view sample_name);

  const Scenario& scenario() const noexcept { return scenario_; }
  const ledger::Chain& edge_chain() const noexcept { return edge_chain_; }
  const Registry& registry() const noexcept { return registry_; }
  const CloudBackup& cloud() const noexcept { return cloud_; }
  const Firewall& firewall() const noexcept { return firewall_; }

  const FileMap& device_files(std::string_view device_id) const;
  std::set<std::string> installed_samples(std::string_view device_id) const;
  const HoneypotRun* honeypot_run(std::string_view sample_name) const;

  // Instrumentation: critical-tier events ever applied to a real device.
  std::size_t critical_events_applied_to_devices() const noexcept { return critical_applied_; }

 private:
  struct DeviceState {
    DeviceSpec spec;
    FileMap files;
    DeviceIdentity identity;
    // What the device presents when authenticating.
    Digest presented_key{};
    std::set<std::string> installed;
  };

  SampleOutcome process(const SoftwareSample& sample, std::size_t honeypot_slot);
  PermissionPolicy policy_for(const SoftwareSample& sample) const;
  DeviceState& device(std::string_view id);
  const DeviceState& device(std::string_view id) const;
  Sandbox make_sandbox(const DeviceState& target, std::size_t slot) const;

  Scenario scenario_;
  SimClock clock_;
  ledger::Chain edge_chain_;
  Registry registry_;
  CloudBackup cloud_;
  Firewall firewall_;
  std::vector<DeviceState> devices_;
  std::vector<std::string> honeypots_;
  std::map<std::string, HoneypotRun, std::less<>> honeypot_runs_;
  std::size_t critical_applied_ = 0;
  bool ran_ = false;
};

// Convenience: Simulation(scenario).run().
RunReport run(const Scenario& scenario);

}  // namespace ransomguard
