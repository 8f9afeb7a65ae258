// Copyright 2026 The FROT Authors
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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("frot_cli_" + std::string(::testing::UnitTest::GetInstance()
                                          ->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args) {
    const std::string cmd = std::string(FROT_CLI_PATH) + " " + args + " > " +
                            (dir_ / "stdout.txt").string() + " 2> " +
                            (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string read(const fs::path& p) const {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  json result(const std::string& out) const {
    return json::parse(read(dir_ / out / "result.json"));
  }

  std::string path(const std::string& rel) const { return (dir_ / rel).string(); }

  void write(const std::string& rel, const std::string& text) const {
    std::ofstream(dir_ / rel) << text;
  }

  void synth() {
    ASSERT_EQ(run("synth --n 8 --m 6 --noise-dims 2 --seed 1 --out " + path("data")), 0);
  }

  std::string pair() const {
    return " --source " + path("data/source.csv") + " --target " +
           path("data/target.csv");
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, SynthWritesMeasuresResultAndManifest) {
  synth();
  EXPECT_TRUE(fs::exists(dir_ / "data/source.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "data/target.csv"));
  const auto r = result("data");
  EXPECT_EQ(r["schema_version"], 1);
  EXPECT_EQ(r["command"], "synth");
  const auto m = json::parse(read(dir_ / "data/manifest.json"));
  EXPECT_EQ(m["command"], "synth");
  EXPECT_EQ(m["seed"], 1);
  EXPECT_EQ(m["config"]["n"], 8);
  EXPECT_FALSE(m["outputs"].empty());
}

TEST_F(Cli, SolverSubcommands) {
  synth();
  ASSERT_EQ(run("emd" + pair() + " --out " + path("emd")), 0);
  const double emd = result("emd")["objective"];
  ASSERT_EQ(run("sinkhorn" + pair() + " --epsilon 0.5 --out " + path("sk")), 0);
  EXPECT_TRUE(result("sk")["converged"].get<bool>());
  EXPECT_GE(result("sk")["transport_cost"].get<double>(), emd - 1e-9);
  ASSERT_EQ(run("frot" + pair() + " --eta 0.5 --iters 5 --subsolver emd --out " +
                path("frot")), 0);
  EXPECT_EQ(result("frot")["objective_trace"].size(), 6u);
  ASSERT_EQ(run("frot" + pair() + " --method lp --out " + path("lp")), 0);
  EXPECT_LE(result("lp")["objective"].get<double>(),
            result("frot")["max_objective"].get<double>() + 1e-9);
  ASSERT_EQ(run("frwd" + pair() + " --p 2 --out " + path("frwd")), 0);
  EXPECT_EQ(result("frwd")["path"], "lp");
  ASSERT_EQ(run("frwd" + pair() + " --eta-schedule 1,0.1 --iters 20 --out " +
                path("frwd_fw")), 0);
  EXPECT_EQ(result("frwd_fw")["path"], "fw");
  EXPECT_TRUE(fs::exists(dir_ / "frwd/plan.csv"));
}

TEST_F(Cli, CostMatrixOverride) {
  write("a.csv", "g0_x\n0\n1\n");
  write("c.csv", "0,5\n5,0\n");
  ASSERT_EQ(run("emd --source " + path("a.csv") + " --target " + path("a.csv") +
                " --cost-matrix " + path("c.csv") + " --out " + path("o")), 0);
  EXPECT_NEAR(result("o")["objective"].get<double>(), 0.0, 1e-15);
  write("bad.csv", "0,5,1\n5,0,1\n");
  EXPECT_EQ(run("emd --source " + path("a.csv") + " --target " + path("a.csv") +
                " --cost-matrix " + path("bad.csv") + " --out " + path("o2")), 2);
}

TEST_F(Cli, ValidationErrorsExitTwo) {
  synth();
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("nonsense"), 2);
  EXPECT_EQ(run("emd --source " + path("nope.csv") + " --target " + path("nope.csv") +
                " --out " + path("x")), 2);
  EXPECT_EQ(run("sinkhorn" + pair() + " --epsilon 0 --out " + path("x")), 2);
  EXPECT_EQ(run("frwd" + pair() + " --ground squared_euclidean --out " + path("x")), 2);
  EXPECT_EQ(run("frot" + pair() + " --eta -1 --out " + path("x")), 2);
  EXPECT_EQ(run("frot" + pair() + " --method simplex --out " + path("x")), 2);
  EXPECT_EQ(run("sinkhorn" + pair() + " --iters abc --out " + path("x")), 2);
  write("cfg.json", "{\"unknown_key\": 1}");
  EXPECT_EQ(run("emd" + pair() + " --config " + path("cfg.json") + " --out " + path("x")), 2);
  write("broken.json", "{");
  EXPECT_EQ(run("emd" + pair() + " --config " + path("broken.json") + " --out " + path("x")), 2);
  EXPECT_FALSE(fs::exists(dir_ / "x" / "manifest.json"));
}

TEST_F(Cli, SolverFailureExitsOne) {
  write("a.csv", "g0_x\n0\n100\n");
  write("b.csv", "g0_x\n1000\n1001\n");
  EXPECT_EQ(run("sinkhorn --source " + path("a.csv") + " --target " + path("b.csv") +
                " --epsilon 0.06 --log-domain off --out " + path("x")), 1);
}

TEST_F(Cli, HelpAndVersionExitZero) {
  EXPECT_EQ(run("--help"), 0);
  EXPECT_EQ(run("--version"), 0);
  EXPECT_EQ(run("frot --help"), 0);
}

TEST_F(Cli, ConfigOverridesFlags) {
  synth();
  write("cfg.json", "{\"epsilon\": 0.7, \"iters\": 3}");
  ASSERT_EQ(run("sinkhorn" + pair() + " --epsilon 0.2 --config " + path("cfg.json") +
                " --out " + path("o")), 0);
  const auto m = json::parse(read(dir_ / "o/manifest.json"));
  EXPECT_EQ(m["config"]["epsilon"], 0.7);
  EXPECT_EQ(result("o")["iterations"], 3);
}

TEST_F(Cli, ExperimentIsDeterministicAndReplayable) {
  const std::string flags =
      "experiment --scenario fig3_solver_compare --n 8 --m 8 --eta-grid 0.5,1 "
      "--epsilon-grid 0.2,0.1 --fig3-fw-iters 10 --seed 4";
  ASSERT_EQ(run(flags + " --out " + path("a")), 0);
  ASSERT_EQ(run(flags + " --out " + path("b")), 0);
  EXPECT_EQ(read(dir_ / "a/result.json"), read(dir_ / "b/result.json"));
  EXPECT_EQ(read(dir_ / "a/fig3_eta.csv"), read(dir_ / "b/fig3_eta.csv"));
  ASSERT_EQ(run("experiment --config " + path("a/manifest.json") + " --out " + path("c")), 0);
  EXPECT_EQ(read(dir_ / "a/result.json"), read(dir_ / "c/result.json"));
  EXPECT_FALSE(fs::exists(dir_ / "a/result.json.tmp"));
}

TEST_F(Cli, SelectFeatures) {
  ASSERT_EQ(run("synth --labeled --n 30 --dims 5 --seed 2 --out " + path("d")), 0);
  ASSERT_EQ(run("select-features --data " + path("d/labeled.csv") +
                " --top-k 2 --out " + path("s")), 0);
  EXPECT_TRUE(fs::exists(dir_ / "s/train_selected.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "s/test_selected.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "s/manifest.json"));
  EXPECT_EQ(run("select-features --data " + path("d/labeled.csv") +
                " --top-k 9 --out " + path("s2")), 2);
}
