#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ransomguard/device.hpp"
#include "ransomguard/entry.hpp"
#include "ransomguard/model.hpp"

namespace ransomguard {

// Disposable decoy environment on a honeypot-class device. The file map is
// a value copy and never aliases a real device's store.
struct Sandbox {
  std::string device_id;
  DeviceClass device_class = DeviceClass::Honeypot;
  FileMap files;
};

struct HoneypotRun {
  std::string sample_name;
  std::string honeypot_id;
  std::vector<SyscallEvent> observed;
  Verdict verdict = Verdict::NotRansomware;
  std::optional<std::size_t> ransom_index;
  EffectSummary sandbox_effects;
};

// Event-at-a-time execution so the orchestrator can interleave the twin
// runs; a session always runs the sample to its last event.
class HoneypotSession {
 public:
  // Throws NotAHoneypot unless the sandbox is honeypot-class.
  HoneypotSession(const SoftwareSample& sample, Sandbox sandbox);

  bool finished() const noexcept { return run_.observed.size() == sample_->trace.size(); }

  // Applies the next trace event to the sandbox. No-op once finished.
  void step();

  // Steps any remaining events and returns the completed run.
  const HoneypotRun& run_to_completion();

  const HoneypotRun& run() const noexcept { return run_; }
  const Sandbox& sandbox() const noexcept { return sandbox_; }

 private:
  const SoftwareSample* sample_;
  Sandbox sandbox_;
  HoneypotRun run_;
};

// Runs every event of `sample` against `sandbox`; verdict is Ransomware
// iff the trace contains a RansomDemand.
HoneypotRun execute_to_completion(const SoftwareSample& sample, Sandbox& sandbox);

}  // namespace ransomguard
