// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "detector_sweep.hpp"
#include "oracles.hpp"
#include "ransomguard/backup.hpp"
#include "ransomguard/detector.hpp"
#include "ransomguard/device.hpp"
#include "ransomguard/entry.hpp"
#include "ransomguard/ledger.hpp"
#include "ransomguard/orchestrator.hpp"
#include "ransomguard/report.hpp"

#ifdef RANSOMGUARD_HAVE_CLI
#include "cli.hpp"
#endif

namespace rg = ransomguard;
namespace corpus = rg::testing;
using K = rg::EventKind;
using rg::FinalStatus;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::optional<std::size_t> first_critical(const std::vector<rg::SyscallEvent>& trace) {
  for (const auto& e : trace) {
    if (rg::tier_of(e.kind) == rg::Tier::Critical) return e.index;
  }
  return std::nullopt;
}

std::vector<K> kinds_of(const std::vector<rg::SyscallEvent>& trace) {
  std::vector<K> out;
  for (const auto& e : trace) out.push_back(e.kind);
  return out;
}

Outcome ac1_kill_chain() {
  Outcome r;
  const auto t0 = Clock::now();
  const auto traces = corpus::kill_chain_traces();
  if (traces.size() < 10) r.fail("fewer than 10 kill-chain traces");
  std::size_t restored = 0;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const std::string name = "killchain-" + std::to_string(i);
    rg::Simulation sim(corpus::scenario_with({traces[i]}, "killchain"));
    const auto before = rg::file_digests(sim.device_files("thermostat-1"));
    const rg::SampleOutcome o = sim.run().samples.at(0);
    const auto after = rg::file_digests(sim.device_files("thermostat-1"));
    if (o.final_status != FinalStatus::UninstalledRansomware) r.fail(name + " ended " + std::string(rg::to_string(o.final_status)));
    if (o.files_encrypted_on_device != 0) r.fail(name + " encrypted device files");
    if (o.files_restored != before.size()) r.fail(name + " restored " + std::to_string(o.files_restored) + " files");
    for (const auto& [path, digest] : before) {
      auto it = after.find(path);
      if (it == after.end() || it->second != digest) r.fail(name + " digest mismatch at " + path);
    }
    restored += o.files_restored;
  }
  const double ms = ms_since(t0);
  if (ms >= 1000.0) r.fail("took " + std::to_string(ms) + " ms");
  if (r.pass) {
    std::ostringstream s;
    s << traces.size() << " traces uninstalled, 0 files encrypted, " << restored << " files restored, " << ms << " ms";
    r.detail = s.str();
  }
  return r;
}

Outcome ac2_benign() {
  Outcome r;
  const auto benign = corpus::benign_traces();
  if (benign.size() < 20) r.fail("fewer than 20 benign traces");
  for (const auto& t : benign) {
    for (const auto& e : t) {
      if (rg::tier_of(e.kind) != rg::Tier::Benign) r.fail("benign corpus contains " + std::string(rg::to_string(e.kind)));
    }
  }
  const rg::RunReport report = rg::run(corpus::scenario_with(benign, "benign"));
  for (const auto& o : report.samples) {
    if (o.final_status != FinalStatus::CompletedBenign || o.device_halt_index || o.devices_uninstalled != 0 ||
        !o.alerts.empty()) {
      r.fail(o.sample_name + " was not left alone");
    }
  }

  const auto mixed = corpus::suspicious_benign_traces();
  const rg::RunReport mixed_report = rg::run(corpus::scenario_with(mixed, "suspicious", "camera-1"));
  std::size_t alerts = 0;
  for (const auto& o : mixed_report.samples) {
    if (o.final_status != FinalStatus::CompletedBenign || o.device_halt_index) r.fail(o.sample_name + " was halted");
    if (o.alerts.empty()) r.fail(o.sample_name + " raised no alert");
    alerts += o.alerts.size();
  }
  if (r.pass) {
    r.detail = std::to_string(benign.size()) + " benign traces with 0 halts/alerts/uninstalls; " +
               std::to_string(mixed.size()) + " suspicious traces with " + std::to_string(alerts) + " alerts, 0 halts";
  }
  return r;
}

Outcome ac3_zero_day() {
  Outcome r;
  const auto seeds = rg::seed_rules();
  std::size_t learned = 0;
  for (std::size_t v = 0; v < corpus::zero_day_traces().size(); ++v) {
    const auto trace = corpus::zero_day_traces()[v];
    const std::string name = "zero-day " + std::to_string(v);
    const auto critical = first_critical(trace);
    if (!critical) {
      r.fail(name + " has no critical event");
      continue;
    }
    const auto ks = kinds_of(trace);
    for (const rg::Rule& rule : seeds) {
      for (std::size_t i = 0; i <= *critical; ++i) {
        if (corpus::subsequence_completes_at(ks, rule.pattern, rule.window, i)) {
          r.fail(name + " matches seed rule " + rule.rule_id);
        }
      }
    }
    rg::Scenario s = corpus::smart_home();
    s.samples.push_back(corpus::physical_sample("first", "hub-1", trace));
    s.samples.push_back(corpus::physical_sample("rerun", "hub-1", trace));
    const rg::RunReport report = rg::run(s);
    const auto& a = report.samples[0];
    const auto& b = report.samples[1];
    if (a.device_halt_index != critical) r.fail(name + " not halted at its first critical event");
    if (a.honeypot_verdict != rg::Verdict::Ransomware) r.fail(name + " not confirmed by the honeypot");
    if (a.rules_added < 1) r.fail(name + " published no feedback rule");
    if (!b.device_halt_index || !a.device_halt_index || *b.device_halt_index > *a.device_halt_index) {
      r.fail(name + " re-run halted later");
    }
    learned += a.rules_added;
  }
  if (r.pass) r.detail = std::to_string(corpus::zero_day_traces().size()) + " variants halted, " + std::to_string(learned) + " rules learned, re-runs halt no later";
  return r;
}

Outcome ac4_tamper_evidence() {
  Outcome r;
  rg::ledger::Chain chain;
  rg::SimClock clock;
  for (const rg::Rule& rule : rg::seed_rules()) {
    rg::ledger::append(chain, rg::RuleAdded{rule, rg::RuleOrigin::Seed}, clock.next());
  }
  rg::ledger::append(chain, rg::VerdictRecord{"s", "honeypot-1", rg::Verdict::Ransomware, 6, 4}, clock.next());
  const rg::Bytes exported = rg::ledger::export_chain(chain.blocks());

  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "ransomguard-acceptance-flip.chain";
  auto write = [&](const rg::Bytes& b) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
  };
  auto verify_exit = [&]() -> int {
#ifdef RANSOMGUARD_HAVE_CLI
    std::ostringstream out;
    std::ostringstream err;
    return rg::cli::run_cli({"ransomguard", "verify", "--ledger", path.string()}, out, err);
#else
    std::ifstream in(path, std::ios::binary);
    const rg::Bytes b{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    const auto decoded = rg::ledger::decode_chain_file(b);
    return decoded.framing_error || !rg::ledger::verify_chain(decoded.blocks) ? 1 : 0;
#endif
  };

  write(exported);
  if (chain.size() != 5) r.fail("chain does not have 5 blocks");
  if (verify_exit() != 0) r.fail("clean chain did not verify");
  std::size_t misses = 0;
  for (std::size_t pos = 0; pos < exported.size(); ++pos) {
    rg::Bytes bad = exported;
    bad[pos] ^= 0xff;
    write(bad);
    if (verify_exit() != 1) ++misses;
  }
  fs::remove(path);
  if (misses) r.fail(std::to_string(misses) + " flips not reported with exit 1");
  if (r.pass) r.detail = std::to_string(exported.size()) + " single-byte flips over 5 blocks, 0 false negatives";
  return r;
}

Outcome ac5_external_devices() {
  Outcome r;
  std::vector<corpus::Trace> traces = corpus::kill_chain_traces();
  for (const auto& t : corpus::benign_traces()) traces.push_back(t);
  for (const auto& t : corpus::zero_day_traces()) traces.push_back(t);

  std::size_t refused = 0;
  std::size_t total = 0;
  for (rg::Enrollment enrollment : {rg::Enrollment::Unregistered, rg::Enrollment::WrongKey}) {
    rg::Scenario s = corpus::smart_home();
    s.devices.push_back(rg::DeviceSpec{"rogue-1", rg::DeviceClass::Constrained, {{"/data/x", "x"}, {"/var/log/syslog", "y"}},
                                       {rg::AccessScope::FileAccess, rg::AccessScope::NetworkAccess}, enrollment});
    for (std::size_t i = 0; i < traces.size(); ++i) {
      s.samples.push_back(corpus::physical_sample("ext-" + std::to_string(i), "rogue-1", traces[i]));
    }
    rg::Simulation sim(s);
    const std::size_t edge_before = sim.edge_chain().size();
    const rg::FileMap files_before = sim.device_files("rogue-1");
    const rg::RunReport report = sim.run();
    for (const auto& o : report.samples) {
      ++total;
      if (o.final_status == FinalStatus::RefusedAccess && o.events_applied_on_device == 0) ++refused;
    }
    if (sim.edge_chain().size() != edge_before) r.fail("edge chain grew");
    if (!sim.cloud().chain().empty()) r.fail("cloud chain grew");
    if (sim.device_files("rogue-1") != files_before) r.fail("external device files changed");
  }
  if (refused != total) r.fail(std::to_string(total - refused) + " of " + std::to_string(total) + " not refused");
  if (r.pass) r.detail = std::to_string(refused) + "/" + std::to_string(total) + " refused, 0 ledger entries, 0 file mutations";
  return r;
}

Outcome ac6_firewall() {
  Outcome r;
  rg::Scenario s = corpus::smart_home();
  const std::vector<std::string> ips = {"10.66.6.6", "192.168.1.20"};
  const std::vector<std::uint32_t> ports = {4444, 6667, 443};
  const std::vector<std::string> exts = {"exe", "scr", "bin"};
  std::vector<corpus::Trace> attacks = corpus::kill_chain_traces();
  for (const auto& t : corpus::zero_day_traces()) attacks.push_back(t);

  std::vector<bool> listed;
  std::size_t n = 0;
  for (const auto& ip : ips) {
    for (auto port : ports) {
      for (const auto& ext : exts) {
        for (bool evasive : {false, true}) {
          const bool hit = s.firewall.ip_blacklist.count(ip) || s.firewall.port_blacklist.count(port) ||
                           s.firewall.extension_blacklist.count(ext);
          if (!hit) continue;
          s.samples.push_back(corpus::network_sample("net-" + std::to_string(n), "hub-1", attacks[n % attacks.size()],
                                                     rg::IngressMeta{ip, port, ext}, evasive));
          listed.push_back(!evasive);
          ++n;
        }
      }
    }
  }
  const rg::RunReport report = rg::run(s);
  std::size_t blocked = 0;
  std::size_t caught = 0;
  std::size_t evasive = 0;
  for (std::size_t i = 0; i < report.samples.size(); ++i) {
    const auto& o = report.samples[i];
    if (listed[i]) {
      if (o.final_status == FinalStatus::BlockedAtFirewall) ++blocked;
      else r.fail(o.sample_name + " passed a blacklist");
    } else {
      ++evasive;
      if (!o.firewall || o.firewall->blocked()) r.fail(o.sample_name + " evasive sample was blocked");
      if (o.final_status == FinalStatus::UninstalledRansomware && o.files_encrypted_on_device == 0) ++caught;
      else r.fail(o.sample_name + " evasive sample not caught downstream");
    }
  }
  if (r.pass) {
    r.detail = std::to_string(blocked) + "/" + std::to_string(report.samples.size() - evasive) +
               " listed samples blocked; " + std::to_string(caught) + "/" + std::to_string(evasive) +
               " evasive samples passed and were caught by detection";
  }
  return r;
}

Outcome ac7_load_balancer() {
  Outcome r;
  std::size_t cases = 0;
  for (std::uint32_t w = 1; w <= 8; ++w) {
    for (std::uint64_t requests = 0; requests <= 100; ++requests) {
      std::vector<rg::Workstation> ws;
      for (std::uint32_t i = 0; i < w; ++i) ws.push_back({i, 0});
      for (std::uint64_t q = 0; q < requests; ++q) rg::route(q, ws);
      const auto [lo, hi] =
          std::minmax_element(ws.begin(), ws.end(), [](const auto& a, const auto& b) { return a.handled < b.handled; });
      if (hi->handled - lo->handled > 1) r.fail("W=" + std::to_string(w) + " R=" + std::to_string(requests));
      ++cases;
    }
  }
  if (r.pass) r.detail = std::to_string(cases) + " (R, W) pairs with max-min <= 1";
  return r;
}

Outcome ac8_detector_oracle() {
  Outcome r;
  const auto t0 = Clock::now();
  const corpus::SweepResult sweep =
      corpus::sweep_detector({K::FileRead, K::PortScan, K::C2Connect, K::EncryptionCall, K::RansomDemand}, 6, 3);
  if (sweep.mismatches) r.fail(std::to_string(sweep.mismatches) + " mismatches, first: " + sweep.first_mismatch);
  if (r.pass) {
    std::ostringstream s;
    s << sweep.traces << " traces x " << sweep.rules << " rules agree with the oracle (" << ms_since(t0) << " ms)";
    r.detail = s.str();
  }
  return r;
}

Outcome ac9_determinism() {
  Outcome r;
  const auto scenarios = corpus::full_corpus();
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    std::string outputs[2];
    for (std::string& out : outputs) {
      rg::Simulation sim(scenarios[i]);
      out = rg::serialize_report(sim.run());
      const rg::Bytes edge = rg::ledger::export_chain(sim.edge_chain().blocks());
      const rg::Bytes cloud = rg::ledger::export_chain(sim.cloud().chain().blocks());
      out.append(edge.begin(), edge.end());
      out.append(cloud.begin(), cloud.end());
    }
    if (outputs[0] != outputs[1]) r.fail("scenario " + std::to_string(i) + " differs between runs");
  }
  if (r.pass) r.detail = std::to_string(scenarios.size()) + " scenarios byte-identical across two runs";
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 kill-chain defeat", ac1_kill_chain},
      {"AC2 benign false positives", ac2_benign},
      {"AC3 zero-day closure", ac3_zero_day},
      {"AC4 tamper evidence", ac4_tamper_evidence},
      {"AC5 external-device exclusion", ac5_external_devices},
      {"AC6 firewall filter", ac6_firewall},
      {"AC7 load-balancer fairness", ac7_load_balancer},
      {"AC8 detector-oracle equivalence", ac8_detector_oracle},
      {"AC9 determinism", ac9_determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    if (!o.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
