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

#include "dqplan/metrics.hpp"

#include <cmath>
#include <random>

#include "dqplan/scenario_io.hpp"
#include "dqplan/simulation.hpp"
#include "gtest/gtest.h"

namespace dqplan {
namespace {

std::string scenario_path(const std::string & name)
{
  return std::string(DQPLAN_SCENARIO_DIR) + "/" + name;
}

SimLog make_log(std::size_t steps, double dt = 0.05)
{
  SimLog log;
  log.scenario = "synthetic";
  log.planner = "test";
  log.dt = dt;
  log.speed = 15.0;
  log.obstacle_ids = {"obs"};
  for (std::size_t k = 0; k < steps; ++k) {
    StepRecord r;
    r.t = dt * static_cast<double>(k);
    r.x = 15.0 * r.t;
    log.steps.push_back(std::move(r));
  }
  return log;
}

TEST(SummarizeTest, StraightLogWithRecedingObstacle)
{
  SimLog log = make_log(100);
  for (auto & step : log.steps) {
    step.y = 0.0;
    step.gaps = {20.0 + 5.0 * step.t};
    step.ttcs = {kInfiniteTtc};
  }
  const MetricSummary s = summarize(log, SafetyParams{});
  EXPECT_TRUE(std::isinf(s.min_ttc));
  EXPECT_EQ(s.ttc_violation_count, 0);
  for (const auto & [thr, frac] : s.ttc_below_fractions) {
    EXPECT_DOUBLE_EQ(frac, 0.0) << thr;
  }
  EXPECT_DOUBLE_EQ(s.max_curvature, 0.0);
  EXPECT_DOUBLE_EQ(s.min_gap, 20.0);
  EXPECT_DOUBLE_EQ(s.total_time, 0.0);
}

TEST(SummarizeTest, FractionMonotonicityOnRandomLogs)
{
  std::mt19937 rng(83);
  std::uniform_real_distribution<double> ttc_dist(0.2, 6.0);
  for (int rep = 0; rep < 200; ++rep) {
    SimLog log = make_log(60);
    for (auto & step : log.steps) {
      step.gaps = {10.0};
      step.ttcs = {ttc_dist(rng)};
    }
    const MetricSummary s = summarize(log, SafetyParams{});
    EXPECT_LE(s.fraction_below(1.0), s.fraction_below(2.0));
    EXPECT_LE(s.fraction_below(2.0), s.fraction_below(3.0));
  }
}

TEST(SummarizeTest, MinGapEqualsColumnMinimumAndRmsIdentity)
{
  std::mt19937 rng(89);
  std::uniform_real_distribution<double> gap_dist(0.5, 40.0);
  std::normal_distribution<double> jerk_dist(0.0, 2.0);
  SimLog log = make_log(200);
  double expected_min = kInfiniteTtc;
  double jerk_sq = 0.0;
  for (auto & step : log.steps) {
    step.gaps = {gap_dist(rng), gap_dist(rng)};
    step.ttcs = {kInfiniteTtc, kInfiniteTtc};
    step.jy = jerk_dist(rng);
    jerk_sq += step.jy * step.jy;
    expected_min = std::min(expected_min, std::min(step.gaps[0], step.gaps[1]));
  }
  log.obstacle_ids = {"a", "b"};
  const MetricSummary s = summarize(log, SafetyParams{});
  EXPECT_DOUBLE_EQ(s.min_gap, expected_min);
  const double identity = s.rms_lateral_jerk * s.rms_lateral_jerk *
                          static_cast<double>(log.steps.size());
  EXPECT_NEAR(identity, jerk_sq, 1e-12 * std::max(1.0, jerk_sq));
  EXPECT_LE(s.rms_lateral_jerk, s.max_lateral_jerk);
}

TEST(SummarizeTest, ViolationCountIsStrict)
{
  SimLog log = make_log(10);
  SafetyParams params;
  params.t_safe = 3.0;
  for (std::size_t k = 0; k < log.steps.size(); ++k) {
    log.steps[k].gaps = {10.0};
    log.steps[k].ttcs = {k < 4 ? 3.0 : 2.0};  // 3.0 exactly is not a violation
  }
  const MetricSummary s = summarize(log, params);
  EXPECT_EQ(s.ttc_violation_count, 6);
}

TEST(SummarizeTest, EmptyLogRejected)
{
  SimLog log;
  EXPECT_THROW(summarize(log, SafetyParams{}), std::domain_error);
}

TEST(SummarizeTest, OptimizedPlanCutsPeakJerkByAQuarter)
{
  const ScenarioConfig config = load_scenario_file(scenario_path("jerk_comparison.json"));
  const MetricSummary optimized =
    summarize(run_scenario(config, PlannerId::kProposed), config.safety);
  const MetricSummary closed =
    summarize(run_scenario(config, PlannerId::kClosedQuintic), config.safety);
  EXPECT_LE(optimized.max_lateral_jerk, 0.75 * closed.max_lateral_jerk);
}

TEST(SummarizeTest, AvoidanceCorpusMinDistanceOrdering)
{
  // Every avoidance level clears the obstacle by more than the straight
  // pass; for this corpus timing the margin grows with the peak.
  const ScenarioConfig base = load_scenario_file(scenario_path("intersection.json"));
  const auto variants = load_variants_file(scenario_path("intersection_levels.json"));
  const auto results = run_ablation(base, variants);
  ASSERT_EQ(results.size(), 4u);
  for (std::size_t i = 1; i < results.size(); ++i) {
    EXPECT_GT(results[i].summary.min_gap, results[0].summary.min_gap) << results[i].name;
    EXPECT_GT(results[i].summary.min_gap, results[i - 1].summary.min_gap - 1e-9)
      << results[i].name;
  }
}

TEST(CompareTest, IdenticalSummariesHaveZeroDeltas)
{
  SimLog log = make_log(50);
  for (auto & step : log.steps) {
    step.gaps = {15.0};
    step.ttcs = {4.0};
    step.y = 1.0;
    step.jy = 0.5;
    step.curvature = 0.001;
  }
  const MetricSummary s = summarize(log, SafetyParams{});
  const std::vector<std::pair<std::string, MetricSummary>> summaries{{"a", s}, {"b", s}};
  const ComparisonTable table = compare(summaries);
  for (std::size_t m = 0; m < table.metric_names.size(); ++m) {
    if (!std::isnan(table.deltas[m][1])) {
      EXPECT_DOUBLE_EQ(table.deltas[m][1], 0.0);
    }
  }
}

TEST(CompareTest, SignConvention)
{
  SimLog log = make_log(50);
  for (auto & step : log.steps) {
    step.gaps = {10.0};
    step.ttcs = {4.0};
    step.jy = 2.0;
  }
  const MetricSummary old_summary = summarize(log, SafetyParams{});
  for (auto & step : log.steps) {
    step.jy = 1.0;  // improved comfort
  }
  const MetricSummary new_summary = summarize(log, SafetyParams{});
  const std::vector<std::pair<std::string, MetricSummary>> summaries{{"old", old_summary},
                                                                     {"new", new_summary}};
  const ComparisonTable table = compare(summaries);
  for (std::size_t m = 0; m < table.metric_names.size(); ++m) {
    if (table.metric_names[m] == "rms_lat_jerk") {
      EXPECT_NEAR(table.deltas[m][1], -0.5, 1e-12);  // (1 - 2)/2
    }
  }
}

TEST(CompareTest, SingleSummaryRejected)
{
  SimLog log = make_log(10);
  for (auto & step : log.steps) {
    step.gaps = {10.0};
    step.ttcs = {4.0};
  }
  const MetricSummary s = summarize(log, SafetyParams{});
  const std::vector<std::pair<std::string, MetricSummary>> one{{"only", s}};
  EXPECT_THROW(compare(one), std::domain_error);
}

TEST(CompareTest, CsvAndTextRenderDeterministically)
{
  SimLog log = make_log(20);
  for (auto & step : log.steps) {
    step.gaps = {12.0};
    step.ttcs = {kInfiniteTtc};
  }
  const MetricSummary s = summarize(log, SafetyParams{});
  const std::vector<std::pair<std::string, MetricSummary>> summaries{{"a", s}, {"b", s}};
  const ComparisonTable table = compare(summaries);
  EXPECT_EQ(to_csv(table), to_csv(table));
  EXPECT_NE(to_csv(table).find("min_ttc,inf,inf"), std::string::npos);
  EXPECT_FALSE(to_text(table).empty());
}

}  // namespace
}  // namespace dqplan
