#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace nomamec::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nomamec_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv(kOutDirEnv);
  }
  void TearDown() override {
    unsetenv(kOutDirEnv);
    fs::remove_all(dir_);
  }
  fs::path dir_;
};

TEST(CliSolve, PureNomaInstance) {
  const Result r = invoke({"solve", "--n", "15", "--dm", "5", "--energy", "2000"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["regime"], "pure_noma");
  EXPECT_EQ(j["best_mode"], "pure_noma");
  EXPECT_EQ(j["delay"], 5.0);
}

TEST(CliSolve, JsonKeyFlagAliases) {
  const Result a = invoke({"solve", "--n_nats", "12", "--d_m", "4", "--h_n_sq", "2", "--energy", "60"});
  const Result b = invoke({"solve", "--n", "12", "--dm", "4", "--hn2", "2", "--energy", "60"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(CliSolve, InfeasibleBudget) {
  const Result r = invoke({"solve", "--n", "15", "--dm", "5", "--energy", "10"});
  EXPECT_EQ(r.code, kExitInfeasible);
  EXPECT_EQ(json::parse(r.out)["feasible"], false);
}

TEST(CliSolve, MethodsAgree) {
  const Result n = invoke({"solve", "--energy", "500", "--method", "newton"});
  const Result d = invoke({"solve", "--energy", "500", "--method", "dinkelbach"});
  ASSERT_EQ(n.code, kExitOk);
  ASSERT_EQ(d.code, kExitOk);
  const double dn = json::parse(n.out)["delay"];
  const double dd = json::parse(d.out)["delay"];
  EXPECT_NEAR(dn, 6.660418507750552371, 1e-9);
  EXPECT_LT(std::abs(dn - dd) / dd, 1e-8);
  EXPECT_EQ(json::parse(d.out)["method"], "dinkelbach");
}

TEST(CliSolve, BadInputs) {
  EXPECT_EQ(invoke({"solve", "--energy", "500", "--dm", "-1"}).code, kExitBadInput);
  EXPECT_EQ(invoke({"solve", "--energy", "abc"}).code, kExitBadInput);
  EXPECT_EQ(invoke({"solve"}).code, kExitBadInput);
  EXPECT_EQ(invoke({"solve", "--energy", "500", "--method", "bisect"}).code, kExitBadInput);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitBadInput);
  EXPECT_EQ(invoke({"solve", "--energy", "500", "--instance", "/nonexistent.json"}).code,
            kExitBadInput);
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST(CliSolve, IterationCapReportsConvergenceFailure) {
  const Result r = invoke({"solve", "--energy", "500", "--max-iters", "1"});
  EXPECT_EQ(r.code, kExitConvergence);
  EXPECT_NE(r.err.find("trace"), std::string::npos);
}

TEST_F(CliFiles, InstanceFileWithOverrides) {
  const fs::path inst = dir_ / "inst.json";
  std::ofstream(inst) << R"({"n_nats": 15, "d_m": 5, "h_m_sq": 1, "h_n_sq": 1, "energy": 50})";
  const Result base = invoke({"solve", "--instance", inst.string()});
  ASSERT_EQ(base.code, kExitOk) << base.err;
  EXPECT_EQ(json::parse(base.out)["regime"], "oma_only");
  const Result over = invoke({"solve", "--instance", inst.string(), "--energy", "2000"});
  EXPECT_EQ(json::parse(over.out)["regime"], "pure_noma");

  std::ofstream(inst) << R"({"n_nats": 15, "d_m": 5, "h_m_sq": 1, "energy": 50})";
  const Result bad = invoke({"solve", "--instance", inst.string()});
  EXPECT_EQ(bad.code, kExitBadInput);
  EXPECT_NE(bad.err.find("h_n_sq"), std::string::npos);
}

TEST_F(CliFiles, SweepWritesCsvAndReproducibleManifest) {
  const fs::path csv = dir_ / "s.csv";
  const Result r = invoke({"sweep", "--points", "7", "--out", csv.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const fs::path manifest = dir_ / "s.manifest.json";
  ASSERT_TRUE(fs::exists(csv));
  ASSERT_TRUE(fs::exists(manifest));
  const std::string first = slurp(csv);
  EXPECT_EQ(std::count(first.begin(), first.end(), '\n'), 8);

  const json m = json::parse(slurp(manifest));
  EXPECT_EQ(m["sweep"]["n_points"], 7);
  EXPECT_TRUE(m.contains("tool_version"));

  const fs::path rerun = dir_ / "r.csv";
  ASSERT_EQ(invoke({"sweep", "--manifest", manifest.string(), "--out", rerun.string()}).code,
            kExitOk);
  EXPECT_EQ(slurp(rerun), first);
}

TEST_F(CliFiles, OutDirEnvRedirectsRelativePaths) {
  setenv(kOutDirEnv, (dir_ / "sub").c_str(), 1);
  ASSERT_EQ(invoke({"sweep", "--points", "2", "--out", "x.csv"}).code, kExitOk);
  EXPECT_TRUE(fs::exists(dir_ / "sub" / "x.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "sub" / "x.manifest.json"));
}

TEST_F(CliFiles, TraceToFile) {
  const fs::path csv = dir_ / "t.csv";
  const Result r = invoke({"trace", "--energy", "500", "--out", csv.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_LE(j["iterations_newton"].get<int>(), j["iterations_dinkelbach"].get<int>());
  EXPECT_LT(j["relative_gap"].get<double>(), 1e-8);
  EXPECT_TRUE(fs::exists(dir_ / "t.manifest.json"));
  EXPECT_EQ(slurp(csv).rfind("method,t,mu,f,delay\n", 0), 0u);
}

TEST(CliTrace, StdoutAndRegimeCheck) {
  const Result r = invoke({"trace", "--energy", "500"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("method,t,mu,f,delay\n", 0), 0u);
  EXPECT_EQ(invoke({"trace", "--energy", "50"}).code, kExitBadInput);
}

TEST(CliCompare, HybridWithinTolerance) {
  const Result r = invoke({"compare", "--energy", "500", "--grid", "1001"});
  ASSERT_EQ(r.code, kExitOk) << r.out;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_LE(j["relative_gap"].get<double>(), kCompareTolerance);
}

TEST(CliCompare, CoarseGridFails) {
  EXPECT_EQ(invoke({"compare", "--energy", "500", "--grid", "5"}).code, kExitCheckFailed);
}

TEST(CliCompare, RejectsPureNomaRegime) {
  EXPECT_EQ(invoke({"compare", "--energy", "2000"}).code, kExitBadInput);
}

}  // namespace
}  // namespace nomamec::cli
