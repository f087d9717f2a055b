#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ransomguard::cli {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kMalformedInput = 2,
  kIoFailure = 3,
  kUsage = 64,
};

// Runs the command line `args` (args[0] is the program name). Normal output
// goes to `out`; diagnostics go to `err`, and only on non-zero exits.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Paths of the chain exports written next to a report.
std::string edge_ledger_path(const std::string& report_path);
std::string cloud_ledger_path(const std::string& report_path);

}  // namespace ransomguard::cli
