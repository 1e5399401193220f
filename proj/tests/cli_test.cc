// Copyright 2026 The mfgkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.h"
#include "mfg/csv_io.h"
#include "mfg/spec_io.h"

namespace mfg::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct Output {
  int code = 0;
  std::string out;
  std::string err;
};

Output RunCli(std::initializer_list<std::string> args) {
  std::vector<std::string> storage = {"mfg"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : storage) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code =
      Run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json ReadJson(const fs::path& path) { return json::parse(ReadFile(path)); }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           (std::string("mfg_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const {
    return (dir_ / name).string();
  }
  std::string Write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
    return Path(name);
  }

  fs::path dir_;
};

const std::string kSpecDir = MFG_SPEC_DIR;

TEST_F(CliTest, ValidateShippedSpec) {
  const Output r = RunCli({"validate", kSpecDir + "/prisoner.yaml"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("valid"), std::string::npos);
  EXPECT_EQ(RunCli({"validate", "--scenario", "sir-demo"}).code, kExitOk);
}

TEST_F(CliTest, ValidateReportsBadMass) {
  std::string text = ReadFile(kSpecDir + "/prisoner.yaml");
  text.replace(text.find("m0: [1, 0]"), 10, "m0: [1, 0.1]");
  const Output r = RunCli({"validate", Write("bad.yaml", text)});
  EXPECT_EQ(r.code, kExitInvalid);
  EXPECT_NE(r.out.find("m0"), std::string::npos) << r.out;
}

TEST_F(CliTest, ValidateReportsParseErrorLine) {
  std::string text = ReadFile(kSpecDir + "/prisoner.yaml");
  text.replace(text.find("states:"), 7, "stats:");
  const Output r = RunCli({"validate", Write("bad.yaml", text)});
  EXPECT_EQ(r.code, kExitInvalid);
  EXPECT_NE(r.err.find("line 7"), std::string::npos) << r.err;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(RunCli({}).code, kExitInvalid);
  EXPECT_EQ(RunCli({"frobnicate"}).code, kExitInvalid);
  EXPECT_EQ(RunCli({"validate"}).code, kExitInvalid);
  EXPECT_EQ(RunCli({"solve", "--scenario", "no-such-game"}).code,
            kExitInvalid);
  EXPECT_EQ(RunCli({"validate", kSpecDir + "/prisoner.yaml", "--scenario",
                    "prisoner-mfg"})
                .code,
            kExitInvalid);
  EXPECT_EQ(RunCli({"--help"}).code, kExitOk);
}

TEST_F(CliTest, RuntimeFailureExitCode) {
  // h * exit rate > 1 breaks the explicit Bellman scheme.
  const Output r =
      RunCli({"solve", "--scenario", "prisoner-mfg", "--step", "2"});
  EXPECT_EQ(r.code, kExitRuntime);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, SolvePrisoner) {
  const Output r =
      RunCli({"solve", "--scenario", "prisoner-mfg", "--out", Path("out")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const char* f : {"strategy.csv", "mpath.csv", "values.csv",
                        "summary.json", "run_info.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / "out" / f)) << f;
  }
  const json s = ReadJson(dir_ / "out" / "summary.json");
  EXPECT_EQ(s["format_version"], 1);
  EXPECT_TRUE(s["converged"].get<bool>());
  EXPECT_LT(s["exploitability"].get<double>(), 1e-6);
  EXPECT_EQ(s["history"].size(), s["iterations"].get<std::size_t>());
  EXPECT_FALSE(s.contains("timestamp"));
  EXPECT_TRUE(ReadJson(dir_ / "out" / "run_info.json").contains("timestamp"));
}

TEST_F(CliTest, SolveNonexistenceReportsNonConvergence) {
  const Output r = RunCli({"solve", "--scenario", "nonexistence", "--damping",
                           "fixed", "--out", Path("out")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json s = ReadJson(dir_ / "out" / "summary.json");
  EXPECT_FALSE(s["converged"].get<bool>());
  EXPECT_EQ(s["iterations"], 200);
  EXPECT_EQ(s["damping"], "fixed");
}

TEST_F(CliTest, SolveFolkGivesDefection) {
  ASSERT_EQ(
      RunCli({"solve", "--scenario", "folk-repeated", "--out", Path("out")})
          .code,
      kExitOk);
  const LocalStrategy pi =
      LoadStrategyCsv(Path("out/strategy.csv"), 2, 2);
  for (int k = 0; k + 1 < pi.grid().steps(); ++k) {
    for (int i = 0; i < 2; ++i) EXPECT_EQ(pi.PureAction(k, i), 1);
  }
}

TEST_F(CliTest, SolveIsByteIdentical) {
  for (const char* out : {"a", "b"}) {
    ASSERT_EQ(RunCli({"--threads", out[0] == 'a' ? "1" : "3", "solve",
                      "--scenario", "sir-demo", "--max-iters", "20", "--out",
                      Path(out)})
                  .code,
              kExitOk);
  }
  for (const char* f :
       {"summary.json", "strategy.csv", "mpath.csv", "values.csv"}) {
    EXPECT_EQ(ReadFile(dir_ / "a" / f), ReadFile(dir_ / "b" / f)) << f;
  }
}

TEST_F(CliTest, SimulateFolkGrim) {
  const Output r = RunCli({"simulate", "--scenario", "folk-repeated",
                           "--strategy", "grim:3", "--n", "50", "--reps", "5",
                           "--seed", "11", "--out", Path("out")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json e = ReadJson(dir_ / "out" / "estimate.json");
  EXPECT_NEAR(e["mean"].get<double>(), -1 - std::pow(0.9, 3), 1e-9);
  EXPECT_EQ(e["stderr"].get<double>(), 0.0);
  EXPECT_EQ(e["ci95"].get<double>(), 0.0);
  EXPECT_EQ(e["R"], 5);
  EXPECT_EQ(e["N"], 50);
  EXPECT_EQ(e["seed"], 11);
  EXPECT_TRUE(e.contains("rng"));
}

TEST_F(CliTest, SimulatePrisonerMeanFieldCheck) {
  const Output r = RunCli({"simulate", "--scenario", "prisoner-mfg",
                           "--strategy", "always-D", "--n", "1000", "--reps",
                           "100", "--seed", "5", "--mf-check", "--out",
                           Path("out")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json e = ReadJson(dir_ / "out" / "estimate.json");
  EXPECT_LT(e["mean_field"]["mean_sup_deviation"].get<double>(), 0.05);
}

TEST_F(CliTest, SingleReplicationOmitsIntervals) {
  ASSERT_EQ(RunCli({"simulate", "--scenario", "prisoner-mfg", "--reps", "1",
                    "--n", "20", "--traces", "1", "--out", Path("out")})
                .code,
            kExitOk);
  const json e = ReadJson(dir_ / "out" / "estimate.json");
  EXPECT_TRUE(e.contains("mean"));
  EXPECT_FALSE(e.contains("stderr"));
  EXPECT_FALSE(e.contains("ci95"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "trace_0.csv"));
}

TEST_F(CliTest, SimulateIsByteIdenticalAcrossThreadCounts) {
  for (const char* out : {"a", "b"}) {
    ASSERT_EQ(RunCli({"--threads", out[0] == 'a' ? "1" : "4", "simulate",
                      "--scenario", "sir-demo", "--n", "100", "--reps", "8",
                      "--seed", "3", "--deviation", "always:distance",
                      "--mf-check", "--out", Path(out)})
                  .code,
              kExitOk);
  }
  EXPECT_EQ(ReadFile(dir_ / "a" / "estimate.json"),
            ReadFile(dir_ / "b" / "estimate.json"));
}

TEST_F(CliTest, SimulateDeviations) {
  const Output r = RunCli(
      {"simulate", "--scenario", "prisoner-mfg", "--strategy", "always-D",
       "--n", "50", "--reps", "20", "--deviation", "always-C", "--deviation",
       "switch-at:1", "--out", Path("out")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json e = ReadJson(dir_ / "out" / "estimate.json");
  EXPECT_EQ(e["deviations"].size(), 2u);
  EXPECT_EQ(e["deviations"][0]["deviation"], "always-C");
  EXPECT_TRUE(e.contains("max_gain"));
}

TEST_F(CliTest, SimulateRejectsBadStrategyFile) {
  const std::string bad =
      Write("bad.csv",
            "# format_version=1 kind=strategy t_end=1 steps=1\n"
            "t,state,action,prob\n0,1,1,2\n");
  const Output r = RunCli(
      {"simulate", "--scenario", "prisoner-mfg", "--strategy", bad});
  EXPECT_EQ(r.code, kExitInvalid);
  EXPECT_EQ(RunCli({"simulate", "--scenario", "prisoner-mfg", "--strategy",
                    "sometimes-C"})
                .code,
            kExitInvalid);
}

double ExploitValue(std::initializer_list<std::string> args) {
  const Output r = RunCli(args);
  EXPECT_EQ(r.code, kExitOk) << r.err;
  return std::stod(r.out);
}

TEST_F(CliTest, Exploit) {
  EXPECT_LT(ExploitValue({"exploit", "--scenario", "prisoner-mfg",
                          "--strategy", "always-D"}),
            1e-6);
  EXPECT_GT(ExploitValue({"exploit", "--scenario", "prisoner-mfg",
                          "--strategy", "always-C", "--json",
                          Path("ex.json")}),
            0.1);
  const json j = ReadJson(dir_ / "ex.json");
  EXPECT_GT(j["exploitability"].get<double>(), 0.1);

  const std::string zero = Write("zero.yaml", R"(format_version: 1
time_mode: continuous
horizon: {discounted: 1}
n_states: 2
n_actions: 2
m0: [0.3, 0.7]
rates:
  fill_diagonal: true
  terms:
    - {from: 1, to: 2, action: 1, const: 1}
    - {from: 2, to: 1, slope: {1: 2}}
costs: []
)");
  EXPECT_EQ(ExploitValue({"exploit", zero, "--strategy", "always:2"}), 0.0);
}

TEST_F(CliTest, ExploitStrategyFileFromSolve) {
  ASSERT_EQ(
      RunCli({"solve", "--scenario", "prisoner-mfg", "--out", Path("out")})
          .code,
      kExitOk);
  EXPECT_LT(ExploitValue({"exploit", "--scenario", "prisoner-mfg",
                          "--strategy", Path("out/strategy.csv")}),
            1e-6);
}

TEST_F(CliTest, ScenarioExport) {
  const Output list = RunCli({"scenario", "list"});
  EXPECT_EQ(list.code, kExitOk);
  EXPECT_NE(list.out.find("punish-finite"), std::string::npos);
  const Output sir = RunCli({"scenario", "sir-demo"});
  ASSERT_EQ(sir.code, kExitOk);
  EXPECT_EQ(ParseSpec(sir.out).name, "sir-demo");
  // The discontinuous cost has no affine form.
  EXPECT_EQ(RunCli({"scenario", "nonexistence"}).code, kExitInvalid);
}

}  // namespace
}  // namespace mfg::cli
