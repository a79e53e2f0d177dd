#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "agrsim/harness/export.hpp"
#include "cli.hpp"

namespace agrsim::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "agrsim");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("agrsim_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    config_ = write("c.json", R"({"stop_time": 40000, "num_proposers": 2, "num_clients": 2,
                                  "block_rate": 0.0001, "tx_rate": 0.0002,
                                  "latency": {"kind": "constant", "ticks": 50}})");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  fs::path dir_;
  std::string config_;
};

TEST_F(CliTest, RunPrintsCsv) {
  const Result r = invoke({"run", "--config", config_, "--seed", "42", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.starts_with(std::string(harness::kCsvHeader) + "\n42,"));
}

TEST_F(CliTest, RunJsonIsTheDefault) {
  const Result r = invoke({"run", "--config", config_});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NO_THROW(harness::run_result_from_json(r.out));
}

TEST_F(CliTest, MissingConfigIsUsageError) {
  const Result r = invoke({"run", "--config", path("absent.json")});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("absent.json"), std::string::npos);
}

TEST_F(CliTest, InvalidConfigNamesField) {
  const std::string bad = write("bad.json", R"({"drop_prob": 2})");
  const Result r = invoke({"run", "--config", bad});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("drop_prob"), std::string::npos);
}

TEST_F(CliTest, BadArgumentsAreUsageErrors) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"launch"}).code, kExitUsage);
  EXPECT_EQ(invoke({"run", "--config", config_, "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(invoke({"run", "--config", config_, "--seed", "minus-one"}).code, kExitUsage);
}

TEST_F(CliTest, HelpExitsZero) {
  const Result r = invoke({"run", "--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("--trace-out"), std::string::npos);
}

TEST_F(CliTest, TraceOutIsDeterministicAndDiffs) {
  const std::string a = path("a.trace");
  const std::string b = path("b.trace");
  ASSERT_EQ(invoke({"run", "--config", config_, "--seed", "5", "--trace-out", a, "--output", path("a.json")}).code, 0);
  ASSERT_EQ(invoke({"run", "--config", config_, "--seed", "5", "--trace-out", b, "--output", path("b.json")}).code, 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));

  const Result same = invoke({"diff-trace", a, b});
  EXPECT_EQ(same.code, kExitOk);
  EXPECT_NE(same.out.find("identical"), std::string::npos);

  const std::string c = path("c.trace");
  ASSERT_EQ(invoke({"run", "--config", config_, "--seed", "6", "--trace-out", c, "--output", path("c.json")}).code, 0);
  const Result differ = invoke({"diff-trace", a, c});
  EXPECT_EQ(differ.code, kExitRunFailure);
  EXPECT_NE(differ.out.find("diverged at record"), std::string::npos);
}

TEST_F(CliTest, DiffTraceRejectsMalformedInput) {
  const std::string good = write("good.trace", "1,0,0,1,activate\n");
  const std::string bad = write("bad.trace", "1,0,0,1\n");
  const Result r = invoke({"diff-trace", good, bad});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("bad.trace"), std::string::npos);
  EXPECT_EQ(invoke({"diff-trace", good, path("nope.trace")}).code, kExitUsage);
}

TEST_F(CliTest, ReplicateCsv) {
  const Result r = invoke({"replicate", "--config", config_, "--seeds", "1,2,3", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
}

}  // namespace
}  // namespace agrsim::cli
