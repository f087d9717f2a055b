#include "ransomguard/honeypot.hpp"

#include "ransomguard/error.hpp"

namespace ransomguard {

HoneypotSession::HoneypotSession(const SoftwareSample& sample, Sandbox sandbox)
    : sample_(&sample), sandbox_(std::move(sandbox)) {
  if (sandbox_.device_class != DeviceClass::Honeypot) throw NotAHoneypot(sandbox_.device_id);
  run_.sample_name = sample.name;
  run_.honeypot_id = sandbox_.device_id;
  run_.observed.reserve(sample.trace.size());
}

void HoneypotSession::step() {
  if (finished()) return;
  const SyscallEvent& event = sample_->trace[run_.observed.size()];
  run_.sandbox_effects += apply_event(sandbox_.files, event, sample_->name);
  if (event.kind == EventKind::RansomDemand && !run_.ransom_index) {
    run_.verdict = Verdict::Ransomware;
    run_.ransom_index = event.index;
  }
  run_.observed.push_back(event);
}

const HoneypotRun& HoneypotSession::run_to_completion() {
  while (!finished()) step();
  return run_;
}

HoneypotRun execute_to_completion(const SoftwareSample& sample, Sandbox& sandbox) {
  HoneypotSession session(sample, sandbox);
  HoneypotRun run = session.run_to_completion();
  sandbox = session.sandbox();
  return run;
}

}  // namespace ransomguard
