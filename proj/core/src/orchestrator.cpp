#include "ransomguard/orchestrator.hpp"

#include <algorithm>

#include "ransomguard/error.hpp"
#include "ransomguard/scenario_io.hpp"

namespace ransomguard {
namespace {

std::uint64_t key_entropy(std::string_view label, std::string_view device_id) {
  const Digest d = sha256(std::string(label) + ":" + std::string(device_id));
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < 8; ++i) v = (v << 8) | d[i];
  return v;
}

Scenario validated(Scenario scenario) {
  validate(scenario);
  return scenario;
}

}  // namespace

Simulation::Simulation(Scenario scenario)
    : scenario_(validated(std::move(scenario))),
      registry_(edge_chain_),
      cloud_(scenario_.workstations),
      firewall_(scenario_.firewall) {
  devices_.reserve(scenario_.devices.size());
  for (const DeviceSpec& spec : scenario_.devices) {
    DeviceIdentity identity = DeviceIdentity::generate(spec.id, spec.scopes, key_entropy("device-key", spec.id));
    Digest presented = identity.secret_key();
    if (spec.enrollment == Enrollment::WrongKey) {
      presented = DeviceIdentity::generate(spec.id, spec.scopes, key_entropy("impostor-key", spec.id))
                      .secret_key();
    }
    if (spec.enrollment != Enrollment::Unregistered) registry_.register_device(identity, clock_.next());
    if (spec.device_class == DeviceClass::Honeypot) honeypots_.push_back(spec.id);
    devices_.push_back(DeviceState{spec, spec.files, std::move(identity), presented, {}});
  }
  for (const Rule& rule : seed_rules()) registry_.publish_rule(rule, RuleOrigin::Seed, clock_.next());
}

Simulation::DeviceState& Simulation::device(std::string_view id) {
  auto it = std::find_if(devices_.begin(), devices_.end(), [&](const DeviceState& d) { return d.spec.id == id; });
  if (it == devices_.end()) throw PreconditionViolation("unknown device '" + std::string(id) + "'");
  return *it;
}

const Simulation::DeviceState& Simulation::device(std::string_view id) const {
  return const_cast<Simulation*>(this)->device(id);
}

const FileMap& Simulation::device_files(std::string_view device_id) const { return device(device_id).files; }

std::set<std::string> Simulation::installed_samples(std::string_view device_id) const {
  return device(device_id).installed;
}

const HoneypotRun* Simulation::honeypot_run(std::string_view sample_name) const {
  auto it = honeypot_runs_.find(sample_name);
  return it == honeypot_runs_.end() ? nullptr : &it->second;
}

std::size_t Simulation::uninstall(std::string_view sample_name) {
  std::size_t cleaned = 0;
  for (DeviceState& d : devices_) {
    if (d.spec.device_class == DeviceClass::Honeypot) continue;
    if (auto it = d.installed.find(std::string(sample_name)); it != d.installed.end()) {
      d.installed.erase(it);
      ++cleaned;
    }
  }
  return cleaned;
}

PermissionPolicy Simulation::policy_for(const SoftwareSample& sample) const {
  switch (scenario_.user_policy) {
    case UserPolicy::AllowAll:
      return [](const SyscallEvent&) { return Permission::Allow; };
    case UserPolicy::DenyAll:
      return [](const SyscallEvent&) { return Permission::Deny; };
    case UserPolicy::PerSampleScript: {
      auto next = std::make_shared<std::size_t>(0);
      return [script = sample.permission_script, next](const SyscallEvent&) {
        // An exhausted script answers Deny.
        return *next < script.size() ? script[(*next)++] : Permission::Deny;
      };
    }
  }
  return {};
}

Sandbox Simulation::make_sandbox(const DeviceState& target, std::size_t slot) const {
  const DeviceState& hp = device(honeypots_[slot % honeypots_.size()]);
  Sandbox sandbox{hp.spec.id, hp.spec.device_class, hp.files};
  // Decoys mirror the target's files so path-directed effects land.
  for (const auto& [path, content] : target.files) sandbox.files[path] = content;
  return sandbox;
}

SampleOutcome Simulation::process(const SoftwareSample& sample, std::size_t honeypot_slot) {
  SampleOutcome out;
  out.sample_name = sample.name;
  out.target_device = sample.target_device;

  if (sample.entry == EntryPoint::Network) {
    out.firewall = firewall_.evaluate(sample);
    if (out.firewall->blocked()) {
      out.final_status = FinalStatus::BlockedAtFirewall;
      return out;
    }
  }

  DeviceState& target = device(sample.target_device);
  AccessDecision access = registry_.authenticate(target.spec.id, target.presented_key);
  if (access.allowed) access = registry_.authorize(target.spec.id, AccessScope::FileAccess);
  out.access = access.reason;
  if (!access.allowed) {
    out.final_status = FinalStatus::RefusedAccess;
    return out;
  }

  out.files_backed_up = cloud_.backup_snapshot(target.spec.id, target.files, registry_, clock_).size();

  const std::vector<Rule> rules = registry_.active_rules();
  const PermissionPolicy policy = policy_for(sample);
  MatchState match;
  HoneypotSession honeypot(sample, make_sandbox(target, honeypot_slot));
  target.installed.insert(sample.name);
  bool device_running = true;

  for (const SyscallEvent& event : sample.trace) {
    if (device_running) {
      const Decision decision = advance_in_place(match, rules, event, policy);
      bool apply = true;
      switch (decision.kind) {
        case DecisionKind::HaltExceptHoneypot:
          out.device_halt_index = event.index;
          out.halt_rule = decision.triggering_rule;
          apply = false;
          break;
        case DecisionKind::AlertUser:
          out.alerts.push_back(AlertRecord{event.index, event.kind, decision.triggering_rule,
                                           decision.permission.value_or(Permission::Allow)});
          if (out.alerts.back().answer == Permission::Deny) {
            out.terminated_index = event.index;
            apply = false;
          }
          break;
        case DecisionKind::Continue:
          break;
      }
      if (apply) {
        const EffectSummary fx = apply_event(target.files, event, sample.name);
        out.files_encrypted_on_device += fx.encrypted;
        ++out.events_applied_on_device;
        if (tier_of(event.kind) == Tier::Critical) ++critical_applied_;
      } else {
        // Frozen on every real device; only the honeypot keeps going.
        device_running = false;
      }
    }
    honeypot.step();
  }

  const HoneypotRun& run = honeypot.run_to_completion();
  out.honeypot_verdict = run.verdict;
  out.honeypot_id = run.honeypot_id;
  out.ransom_index = run.ransom_index;
  out.honeypot_events_observed = run.observed.size();

  registry_.publish_verdict(VerdictRecord{sample.name, run.honeypot_id, run.verdict,
                                          run.ransom_index, out.device_halt_index},
                            clock_.next());

  if (run.verdict == Verdict::Ransomware) {
    out.devices_uninstalled = uninstall(sample.name);
    try {
      if (auto rule = extract_feedback_rule(run.observed, registry_.active_rules())) {
        registry_.publish_rule(*rule, RuleOrigin::HoneypotFeedback, clock_.next());
        out.rules_added = 1;
        out.feedback_rule = rule->rule_id;
      }
    } catch (const NoCriticalEvent&) {
      // Ransom without a critical step yields nothing to learn from.
    }
    out.files_restored = cloud_.restore(target.spec.id, target.files, registry_);
    out.final_status = FinalStatus::UninstalledRansomware;
  } else if (out.device_halt_index) {
    out.final_status = FinalStatus::Quarantined;
  } else if (out.terminated_index) {
    out.final_status = FinalStatus::TerminatedByUser;
  } else {
    out.final_status = FinalStatus::CompletedBenign;
  }

  honeypot_runs_.insert_or_assign(sample.name, run);
  registry_.end_session(target.spec.id);
  return out;
}

RunReport Simulation::run() {
  if (ran_) throw PreconditionViolation("simulation already ran");
  ran_ = true;

  RunReport report;
  report.scenario_digest = sha256(serialize_scenario(scenario_));
  report.seed = scenario_.seed;

  std::size_t honeypot_slot = 0;
  for (const SoftwareSample& sample : scenario_.samples) {
    SampleOutcome outcome = process(sample, honeypot_slot);
    if (outcome.honeypot_verdict) ++honeypot_slot;
    report.samples.push_back(std::move(outcome));
  }

  report.edge_chain_digest = edge_chain_.head_digest();
  report.edge_chain_blocks = edge_chain_.size();
  report.cloud_chain_digest = cloud_.chain().head_digest();
  report.cloud_chain_blocks = cloud_.chain().size();
  for (const Rule& r : registry_.active_rules()) report.active_rules.push_back(r.rule_id);
  return report;
}

RunReport run(const Scenario& scenario) { return Simulation(scenario).run(); }

}  // namespace ransomguard
