#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "cli.hpp"
#include "corpus.hpp"
#include "ransomguard/scenario_io.hpp"

namespace fs = std::filesystem;
namespace rg = ransomguard;
namespace cli = ransomguard::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "ransomguard");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const fs::path& p, const std::string& data) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << data;
}

}  // namespace

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ransomguard-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    rg::Scenario s = rg::testing::smart_home();
    s.samples.push_back(rg::testing::physical_sample("locker", "thermostat-1", rg::testing::kill_chain_traces()[0]));
    s.samples.push_back(rg::testing::physical_sample("benign", "camera-1", rg::testing::benign_traces()[0]));
    s.samples.push_back(rg::testing::network_sample("blocked", "hub-1", rg::testing::kill_chain_traces()[1],
                                                    rg::IngressMeta{"10.66.6.6", 80, "bin"}, false));
    spit(scenario(), rg::serialize_scenario(s));
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string scenario() const { return (dir_ / "scenario.json").string(); }
  std::string report() const { return (dir_ / "report.json").string(); }

  fs::path dir_;
};

TEST_F(CliTest, RunWritesReportAndLedgers) {
  const Result r = invoke({"run", "--scenario", scenario(), "--report", report()});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(r.err.empty());
  EXPECT_TRUE(fs::exists(report()));
  EXPECT_TRUE(fs::exists(cli::edge_ledger_path(report())));
  EXPECT_TRUE(fs::exists(cli::cloud_ledger_path(report())));
}

TEST_F(CliTest, SameSeedGivesIdenticalFiles) {
  const std::string second = (dir_ / "again.json").string();
  ASSERT_EQ(invoke({"run", "--scenario", scenario(), "--report", report(), "--seed", "9"}).code, cli::kOk);
  ASSERT_EQ(invoke({"run", "--scenario", scenario(), "--report", second, "--seed", "9"}).code, cli::kOk);
  EXPECT_EQ(slurp(report()), slurp(second));
  EXPECT_EQ(slurp(cli::edge_ledger_path(report())), slurp(cli::edge_ledger_path(second)));
  EXPECT_EQ(slurp(cli::cloud_ledger_path(report())), slurp(cli::cloud_ledger_path(second)));
  EXPECT_NE(slurp(report()).find("\"seed\": 9"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({"run", "--report", report()}).code, cli::kUsage);
  EXPECT_EQ(invoke({}).code, cli::kUsage);
  EXPECT_EQ(invoke({"verify", "--ledger", "x", "--bogus", "1"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"explode"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"--help"}).code, cli::kOk);
}

TEST_F(CliTest, MalformedScenarioAndIoFailures) {
  spit(dir_ / "bad.json", "{\"devices\": 7}");
  EXPECT_EQ(invoke({"run", "--scenario", (dir_ / "bad.json").string(), "--report", report()}).code,
            cli::kMalformedInput);
  EXPECT_EQ(invoke({"run", "--scenario", (dir_ / "missing.json").string(), "--report", report()}).code,
            cli::kIoFailure);
  EXPECT_EQ(invoke({"run", "--scenario", scenario(), "--report", (dir_ / "no/such/dir/r.json").string()}).code,
            cli::kIoFailure);
  EXPECT_EQ(invoke({"verify", "--ledger", (dir_ / "missing.chain").string()}).code, cli::kIoFailure);
}

TEST_F(CliTest, VerifyOutcomes) {
  ASSERT_EQ(invoke({"run", "--scenario", scenario(), "--report", report()}).code, cli::kOk);
  const std::string edge = cli::edge_ledger_path(report());
  const Result ok = invoke({"verify", "--ledger", edge});
  EXPECT_EQ(ok.code, cli::kOk);
  EXPECT_EQ(ok.out.rfind("blocks=", 0), 0u);
  EXPECT_TRUE(ok.err.empty());

  std::string bytes = slurp(edge);
  bytes[bytes.size() / 2] ^= 0x01;
  spit(dir_ / "flipped.chain", bytes);
  EXPECT_EQ(invoke({"verify", "--ledger", (dir_ / "flipped.chain").string()}).code, cli::kVerificationFailed);

  spit(dir_ / "empty.chain", "");
  EXPECT_EQ(invoke({"verify", "--ledger", (dir_ / "empty.chain").string()}).code, cli::kMalformedInput);
}

TEST_F(CliTest, SummarizePrintsOneLinePerSample) {
  ASSERT_EQ(invoke({"run", "--scenario", scenario(), "--report", report()}).code, cli::kOk);
  const Result r = invoke({"summarize", "--report", report()});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
  EXPECT_NE(r.out.find("locker status=UninstalledRansomware"), std::string::npos);
  EXPECT_NE(r.out.find("blocked status=BlockedAtFirewall"), std::string::npos);

  spit(dir_ / "bad-report.json", "{\"samples\": [1]}");
  EXPECT_EQ(invoke({"summarize", "--report", (dir_ / "bad-report.json").string()}).code, cli::kMalformedInput);
}

TEST_F(CliTest, SummarizeAcceptsEveryCorpusRun) {
  int i = 0;
  for (const rg::Scenario& s : rg::testing::full_corpus()) {
    const fs::path sc = dir_ / ("c" + std::to_string(i) + ".json");
    const fs::path rp = dir_ / ("c" + std::to_string(i++) + ".report.json");
    spit(sc, rg::serialize_scenario(s));
    ASSERT_EQ(invoke({"run", "--scenario", sc.string(), "--report", rp.string()}).code, cli::kOk);
    EXPECT_EQ(invoke({"summarize", "--report", rp.string()}).code, cli::kOk);
    EXPECT_EQ(invoke({"verify", "--ledger", cli::edge_ledger_path(rp.string())}).code, cli::kOk);
  }
}
