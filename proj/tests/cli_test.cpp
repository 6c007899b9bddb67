// Copyright 2026 The dqplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string & args, const fs::path & capture)
{
  const std::string cmd =
    std::string(DQPLAN_CLI_PATH) + " " + args + " > " + capture.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(capture);
  std::stringstream ss;
  ss << in.rdbuf();
  result.output = ss.str();
  return result;
}

std::string read_file(const fs::path & path)
{
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override
  {
    dir_ = fs::temp_directory_path() / ("dqplan_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string scenario(const std::string & name) const
  {
    return std::string(DQPLAN_SCENARIO_DIR) + "/" + name;
  }

  fs::path dir_;
};

TEST_F(CliTest, SimulateWritesThreeFiles)
{
  const auto out = dir_ / "out";
  const RunResult r = run_cli("simulate " + scenario("consecutive_dense.json") +
                                " --planner proposed --out " + out.string(),
                              dir_ / "log.txt");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_TRUE(fs::exists(out / "consecutive_dense.proposed.log.csv"));
  EXPECT_TRUE(fs::exists(out / "consecutive_dense.proposed.summary.json"));
  EXPECT_TRUE(fs::exists(out / "consecutive_dense.proposed.trajectory.svg"));
}

TEST_F(CliTest, MissingScenarioExitsTwoAndNamesPath)
{
  const RunResult r = run_cli("simulate nowhere.json --out " + (dir_ / "o").string(),
                              dir_ / "log.txt");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("nowhere.json"), std::string::npos);
}

TEST_F(CliTest, MalformedJsonExitsTwoWithParseLocation)
{
  const fs::path bad = dir_ / "bad.json";
  std::ofstream(bad) << "{ \"name\": ";
  const RunResult r =
    run_cli("simulate " + bad.string() + " --out " + (dir_ / "o").string(), dir_ / "log.txt");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("parse"), std::string::npos);
}

TEST_F(CliTest, CompareNeedsTwoPlanners)
{
  const RunResult r = run_cli("compare " + scenario("consecutive_dense.json") +
                                " --planners proposed --out " + (dir_ / "o").string(),
                              dir_ / "log.txt");
  EXPECT_EQ(r.exit_code, 2);
}

TEST_F(CliTest, CompareWritesMergedTableAndPlots)
{
  const auto out = dir_ / "out";
  const RunResult r = run_cli("compare " + scenario("overtake_near_lead.json") +
                                " --planners quintic,bezier --out " + out.string(),
                              dir_ / "log.txt");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_TRUE(fs::exists(out / "overtake_near_lead.compare.csv"));
  EXPECT_TRUE(fs::exists(out / "overtake_near_lead.trajectories.svg"));
  EXPECT_TRUE(fs::exists(out / "overtake_near_lead.gap_hdv1.svg"));
}

TEST_F(CliTest, DeterministicReruns)
{
  const auto out1 = dir_ / "a";
  const auto out2 = dir_ / "b";
  const std::string base = "simulate " + scenario("overtake_near_lead.json") +
                           " --planner quintic --out ";
  ASSERT_EQ(run_cli(base + out1.string(), dir_ / "log1.txt").exit_code, 0);
  ASSERT_EQ(run_cli(base + out2.string(), dir_ / "log2.txt").exit_code, 0);
  EXPECT_EQ(read_file(out1 / "overtake_near_lead.quintic.log.csv"),
            read_file(out2 / "overtake_near_lead.quintic.log.csv"));
  EXPECT_EQ(read_file(out1 / "overtake_near_lead.quintic.summary.json"),
            read_file(out2 / "overtake_near_lead.quintic.summary.json"));
}

TEST_F(CliTest, AblateEmptyVariantsExitsTwo)
{
  const fs::path empty = dir_ / "empty.json";
  std::ofstream(empty) << R"({"variants": []})";
  const RunResult r = run_cli("ablate " + scenario("consecutive_spread.json") + " " +
                                empty.string() + " --out " + (dir_ / "o").string(),
                              dir_ / "log.txt");
  EXPECT_EQ(r.exit_code, 2);
}

TEST_F(CliTest, AblateUnknownFieldExitsTwoNamingField)
{
  const fs::path bogus = dir_ / "bogus.json";
  std::ofstream(bogus)
    << R"({"variants": [{"name": "x", "overrides": {"unknown.knob": 1.0}}]})";
  const RunResult r = run_cli("ablate " + scenario("consecutive_spread.json") + " " +
                                bogus.string() + " --out " + (dir_ / "o").string(),
                              dir_ / "log.txt");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("unknown.knob"), std::string::npos);
}

TEST_F(CliTest, AblateWritesPanelsAndCsv)
{
  const auto out = dir_ / "out";
  const RunResult r = run_cli("ablate " + scenario("intersection.json") + " " +
                                scenario("intersection_levels.json") + " --out " +
                                out.string(),
                              dir_ / "log.txt");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_TRUE(fs::exists(out / "intersection.ablation.csv"));
  EXPECT_TRUE(fs::exists(out / "intersection.ablation.svg"));
  EXPECT_TRUE(fs::exists(out / "intersection.ablation.json"));
}

TEST_F(CliTest, PlanWritesTrajectoryAndReport)
{
  const auto out = dir_ / "out";
  const RunResult r = run_cli("plan " + scenario("jerk_comparison.json") +
                                " --planner proposed --out " + out.string(),
                              dir_ / "log.txt");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_TRUE(fs::exists(out / "jerk_comparison.proposed.plan.csv"));
  EXPECT_TRUE(fs::exists(out / "jerk_comparison.proposed.plan.json"));
  EXPECT_TRUE(fs::exists(out / "jerk_comparison.proposed.trajectory.svg"));
}

TEST_F(CliTest, CompareFivePlannersListsAllEntries)
{
  const auto out = dir_ / "out";
  const RunResult r =
    run_cli("compare " + scenario("consecutive_dense.json") +
              " --planners proposed,quintic,double_quintic,bezier,bspline --out " +
              out.string(),
            dir_ / "log.txt");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  const std::string csv = read_file(out / "consecutive_dense.compare.csv");
  for (const char * name : {"proposed", "quintic", "double_quintic", "bezier", "bspline"}) {
    EXPECT_NE(csv.find(name), std::string::npos) << name;
  }
  // Re-running produces byte-identical output.
  const auto out2 = dir_ / "out2";
  ASSERT_EQ(run_cli("compare " + scenario("consecutive_dense.json") +
                      " --planners proposed,quintic,double_quintic,bezier,bspline --out " +
                      out2.string(),
                    dir_ / "log2.txt")
              .exit_code,
            0);
  EXPECT_EQ(csv, read_file(out2 / "consecutive_dense.compare.csv"));
}

TEST_F(CliTest, ReplayCheckValidatesCsv)
{
  const fs::path good = dir_ / "good.csv";
  std::ofstream(good) << "t,x,y\n0,0,0\n0.5,5,0\n1.0,10,0\n";
  EXPECT_EQ(run_cli("replay-check " + good.string(), dir_ / "log.txt").exit_code, 0);

  const fs::path bad = dir_ / "bad.csv";
  std::ofstream(bad) << "t,x,y\n0,0,0\n0.5,zzz,0\n";
  const RunResult r = run_cli("replay-check " + bad.string(), dir_ / "log.txt");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("bad.csv:3"), std::string::npos);
}

TEST_F(CliTest, ScenarioDirEnvironmentFallback)
{
  const RunResult r = run_cli("simulate consecutive_dense.json --planner quintic --out " +
                                (dir_ / "o").string(),
                              dir_ / "log.txt");
  // PLANNER_SCENARIO_DIR is set by the test harness below; without it the
  // bare name cannot resolve.
  const char * env = std::getenv("PLANNER_SCENARIO_DIR");
  if (env != nullptr && std::string(env) == DQPLAN_SCENARIO_DIR) {
    EXPECT_EQ(r.exit_code, 0) << r.output;
  } else {
    EXPECT_EQ(r.exit_code, 2);
  }
}

}  // namespace

int main(int argc, char ** argv)
{
  ::setenv("PLANNER_SCENARIO_DIR", DQPLAN_SCENARIO_DIR, 1);
  ::testing::InitGoogleTest(&argc, argv);
  return RUN_ALL_TESTS();
}
