#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ransomguard/error.hpp"
#include "ransomguard/ledger.hpp"
#include "ransomguard/orchestrator.hpp"
#include "ransomguard/report.hpp"
#include "ransomguard/scenario_io.hpp"

namespace ransomguard::cli {
namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) return std::nullopt;
  return data;
}

bool write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  return static_cast<bool>(out.flush());
}

int cmd_run(const std::string& scenario_path, const std::string& report_path,
            const std::optional<std::uint64_t>& seed, std::ostream& out, std::ostream& err) {
  auto text = read_file(scenario_path);
  if (!text) {
    err << "error: cannot read scenario '" << scenario_path << "'\n";
    return kIoFailure;
  }

  Scenario scenario;
  try {
    scenario = parse_scenario(*text);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kMalformedInput;
  }
  if (seed) scenario.seed = *seed;

  Simulation sim(scenario);
  const RunReport report = sim.run();

  const std::string edge_path = edge_ledger_path(report_path);
  const std::string cloud_path = cloud_ledger_path(report_path);
  const Bytes edge = ledger::export_chain(sim.edge_chain().blocks());
  const Bytes cloud = ledger::export_chain(sim.cloud().chain().blocks());
  auto as_view = [](const Bytes& b) { return std::string_view(reinterpret_cast<const char*>(b.data()), b.size()); };
  if (!write_file(report_path, serialize_report(report)) || !write_file(edge_path, as_view(edge)) ||
      !write_file(cloud_path, as_view(cloud))) {
    err << "error: cannot write report or ledger exports for '" << report_path << "'\n";
    return kIoFailure;
  }

  out << "samples=" << report.samples.size() << " edge_blocks=" << report.edge_chain_blocks
      << " cloud_blocks=" << report.cloud_chain_blocks << "\n"
      << "report: " << report_path << "\n"
      << "edge ledger: " << edge_path << "\n"
      << "cloud ledger: " << cloud_path << "\n";
  return kOk;
}

int cmd_verify(const std::string& ledger_path, std::ostream& out, std::ostream& err) {
  auto data = read_file(ledger_path);
  if (!data) {
    err << "error: cannot read ledger '" << ledger_path << "'\n";
    return kIoFailure;
  }
  const std::span<const std::uint8_t> bytes(reinterpret_cast<const std::uint8_t*>(data->data()), data->size());

  ledger::DecodedChainFile decoded;
  try {
    decoded = ledger::decode_chain_file(bytes);
  } catch (const DecodeError& e) {
    err << "error: " << e.what() << "\n";
    return kMalformedInput;
  }

  const Digest head = decoded.blocks.empty() ? kZeroDigest : decoded.blocks.back().digest;
  out << "blocks=" << decoded.blocks.size() << " head=" << to_hex(head) << "\n";
  if (decoded.framing_error) {
    err << "verification failed: " << *decoded.framing_error << "\n";
    return kVerificationFailed;
  }
  if (!ledger::verify_chain(decoded.blocks)) {
    err << "verification failed: digest or linkage mismatch\n";
    return kVerificationFailed;
  }
  out << "OK\n";
  return kOk;
}

int cmd_summarize(const std::string& report_path, std::ostream& out, std::ostream& err) {
  auto text = read_file(report_path);
  if (!text) {
    err << "error: cannot read report '" << report_path << "'\n";
    return kIoFailure;
  }
  RunReport report;
  try {
    report = parse_report(*text);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kMalformedInput;
  }
  for (const SampleOutcome& o : report.samples) out << summary_line(o) << "\n";
  return kOk;
}

}  // namespace

std::string edge_ledger_path(const std::string& report_path) { return report_path + ".edge.chain"; }
std::string cloud_ledger_path(const std::string& report_path) { return report_path + ".cloud.chain"; }

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ransomware-prevention framework simulator", "ransomguard"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string report_path;
  std::optional<std::uint64_t> seed;
  CLI::App* run = app.add_subcommand("run", "Simulate a scenario and write a JSON report plus chain exports");
  run->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--report", report_path, "Report output path")->required();
  run->add_option("--seed", seed, "Override the scenario seed");

  std::string ledger_path;
  CLI::App* verify = app.add_subcommand("verify", "Verify an exported chain file");
  verify->add_option("--ledger", ledger_path, "Exported chain file")->required();

  std::string summary_path;
  CLI::App* summarize = app.add_subcommand("summarize", "Print one line per sample of a report");
  summarize->add_option("--report", summary_path, "Report JSON file")->required();

  // CLI11 consumes arguments back to front, without the program name.
  std::vector<std::string> reversed;
  if (args.size() > 1) reversed.assign(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (*run) return cmd_run(scenario_path, report_path, seed, out, err);
    if (*verify) return cmd_verify(ledger_path, out, err);
    if (*summarize) return cmd_summarize(summary_path, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kMalformedInput;
  }
  err << app.help();
  return kUsage;
}

}  // namespace ransomguard::cli
