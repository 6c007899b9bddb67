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

#include "dqplan/optimizer.hpp"

#include <cmath>

#include "gtest/gtest.h"

namespace dqplan {
namespace {

PlanningProblem lane_change_problem(double dy, double T, double speed, double horizon)
{
  PlanningProblem pb;
  pb.maneuver.kind = ManeuverKind::kLaneChange;
  pb.maneuver.delta_y = dy;
  pb.maneuver.duration = T;
  pb.speed = speed;
  pb.horizon = horizon;
  pb.limits.a_y_max = 50.0;
  pb.limits.j_y_max = 500.0;
  pb.limits.delta_max = 1.2;
  return pb;
}

TEST(OptimizeManeuverTest, NoObstaclesRecoversSingleQuinticCostLevel)
{
  // The double-quintic family contains the single min-jerk quintic (junction
  // = its midcourse state), which is the global jerk minimizer; the
  // closed-form rest junction costs 16x more. The optimizer must close most
  // of that ratio.
  PlanningProblem pb = lane_change_problem(3.5, 5.0, 15.0, 8.0);
  OptimizerConfig cfg;
  const OptimizeReport report = optimize_maneuver(pb, cfg);
  ASSERT_TRUE(report.final_plan.has_value());
  EXPECT_TRUE(report.converged);

  const double analytic_floor = 720.0 * 3.5 * 3.5 / std::pow(5.0, 5);
  const double rest_junction_cost = report.cost_history.front();
  EXPECT_GT(rest_junction_cost, 10.0 * analytic_floor);
  EXPECT_LT(report.final_breakdown.total, 1.6 * analytic_floor);

  // Coarse grid oracle over the junction box: no grid point may undercut
  // the optimizer's result beyond tolerance.
  CostEvaluator eval(pb.tracks, pb.safety, pb.weights, pb.limits, 0.0, pb.horizon, pb.dt);
  const double span = 3.5;
  double best_grid = 1e300;
  for (int it = 0; it < 5; ++it) {
    for (int iy = 0; iy < 5; ++iy) {
      for (int iv = 0; iv < 5; ++iv) {
        for (int ia = 0; ia < 5; ++ia) {
          const JunctionState j{
            0.25 + (4.75 - 0.25) * it / 4.0,
            -0.25 * span + 1.5 * span * iy / 4.0,
            -3.0 * span / 5.0 + 6.0 * span / 5.0 * iv / 4.0,
            -10.0 * span / 25.0 + 20.0 * span / 25.0 * ia / 4.0};
          const ManeuverPlan plan = double_lane_change(3.5, j, 5.0, 15.0, 8.0);
          best_grid = std::min(best_grid, eval.evaluate(plan).total);
        }
      }
    }
  }
  EXPECT_LE(report.final_breakdown.total,
            best_grid + 1e-6 * (1.0 + std::fabs(report.final_breakdown.total)));
}

TEST(OptimizeManeuverTest, CostHistoryNonIncreasingAndBounded)
{
  PlanningProblem pb = lane_change_problem(18.0, 5.0, 18.0, 8.0);
  pb.tracks.push_back(constant_track("hdv", 40.0, 0.0, 12.0, pb.horizon, pb.dt));
  pb.safety.t_safe = 2.5;
  pb.weights.lambda1 = 1.0;
  pb.weights.lambda2 = 5.0;
  OptimizerConfig cfg;
  const OptimizeReport report = optimize_maneuver(pb, cfg);
  ASSERT_GE(report.cost_history.size(), 1u);
  EXPECT_EQ(report.cost_history.size(), static_cast<std::size_t>(report.iterations) + 1);
  for (std::size_t i = 1; i < report.cost_history.size(); ++i) {
    EXPECT_LE(report.cost_history[i], report.cost_history[i - 1]);
  }
  EXPECT_TRUE(report.converged);
  EXPECT_LE(report.iterations, cfg.max_iters);
  EXPECT_LT(report.final_breakdown.total, report.cost_history.front());
}

TEST(OptimizeManeuverTest, DurationDofReducesJerk)
{
  PlanningProblem pb = lane_change_problem(18.0, 5.0, 18.0, 8.0);
  pb.tracks.push_back(constant_track("hdv", 40.0, 0.0, 12.0, pb.horizon, pb.dt));
  pb.safety.t_safe = 2.5;
  OptimizerConfig cfg;
  cfg.optimize_duration = true;
  const OptimizeReport report = optimize_maneuver(pb, cfg);
  ASSERT_TRUE(report.final_plan.has_value());

  auto rms_jerk = [&](const ManeuverPlan & plan) {
    double acc = 0.0;
    int count = 0;
    for (double t = 0.0; t <= 8.0 - 1e-9; t += 0.05, ++count) {
      const double j = plan.lateral(t, 3);
      acc += j * j;
    }
    return std::sqrt(acc / count);
  };
  const ManeuverPlan closed = single_lane_change(18.0, 5.0, 18.0, 8.0);
  EXPECT_LT(rms_jerk(*report.final_plan), 0.8 * rms_jerk(closed));
  // Endpoints preserved regardless of the duration choice.
  EXPECT_NEAR(report.final_plan->lateral(8.0, 0), 18.0, 1e-9);
}

TEST(OptimizeManeuverTest, ZeroObjectiveReturnsInitializationConverged)
{
  PlanningProblem pb = lane_change_problem(3.5, 5.0, 15.0, 8.0);
  pb.weights = CostWeights{0.0, 0.0, 0.0, 0.0, 0.0};
  OptimizerConfig cfg;
  cfg.max_iters = 1;
  const OptimizeReport report = optimize_maneuver(pb, cfg);
  EXPECT_TRUE(report.converged);
  EXPECT_EQ(report.iterations, 0);
  EXPECT_DOUBLE_EQ(report.final_breakdown.total, 0.0);
}

TEST(OptimizeManeuverTest, SingleQuinticModeReturnsClosedForm)
{
  PlanningProblem pb = lane_change_problem(3.5, 5.0, 15.0, 8.0);
  OptimizerConfig cfg;
  cfg.single_quintic = true;
  const OptimizeReport report = optimize_maneuver(pb, cfg);
  ASSERT_TRUE(report.final_plan.has_value());
  EXPECT_EQ(report.iterations, 0);
  const ManeuverPlan reference = single_lane_change(3.5, 5.0, 15.0, 8.0);
  for (double t = 0.0; t <= 8.0 - 1e-9; t += 0.25) {
    EXPECT_NEAR(report.final_plan->lateral(t, 0),
                double_lane_change(3.5, symmetric_junction(3.5, 5.0), 5.0, 15.0, 8.0)
                  .lateral(t, 0),
                1e-9);
  }
  (void)reference;
}

TEST(OptimizeManeuverTest, SingleQuinticDurationDofStretchesManeuver)
{
  PlanningProblem pb = lane_change_problem(18.0, 5.0, 18.0, 8.0);
  OptimizerConfig cfg;
  cfg.single_quintic = true;
  cfg.optimize_duration = true;
  const OptimizeReport report = optimize_maneuver(pb, cfg);
  ASSERT_TRUE(report.final_plan.has_value());
  ASSERT_EQ(report.final_params.size(), 1u);
  // With no traffic the smoothness term drives T to its upper bound.
  EXPECT_GT(report.final_params[0], 5.0);
  EXPECT_NEAR(report.final_plan->lateral(8.0, 0), 18.0, 1e-9);
  EXPECT_LT(report.final_breakdown.total, report.cost_history.front());
}

TEST(OptimizeManeuverTest, BoundaryConditionsHoldForReturnedPlans)
{
  PlanningProblem pb = lane_change_problem(7.0, 6.0, 15.0, 12.0);
  pb.maneuver.kind = ManeuverKind::kConsecutive;
  pb.maneuver.leg_duration = 3.0;
  pb.tracks.push_back(constant_track("hdv2", 3.0, 3.5, 13.0, pb.horizon, pb.dt));
  const OptimizeReport report = optimize_maneuver(pb, OptimizerConfig{});
  ASSERT_TRUE(report.final_plan.has_value());
  const ManeuverPlan & plan = *report.final_plan;
  EXPECT_NEAR(plan.lateral(0.0, 0), 0.0, 1e-9);
  EXPECT_NEAR(plan.lateral(0.0, 1), 0.0, 1e-9);
  EXPECT_NEAR(plan.lateral(0.0, 2), 0.0, 1e-9);
  EXPECT_NEAR(plan.lateral(6.0, 0), 7.0, 1e-9);
  EXPECT_NEAR(plan.lateral(6.0, 1), 0.0, 1e-9);
  EXPECT_NEAR(plan.lateral(6.0, 2), 0.0, 1e-9);
}

TEST(OptimizeManeuverTest, DeterministicReports)
{
  PlanningProblem pb = lane_change_problem(18.0, 5.0, 18.0, 8.0);
  pb.tracks.push_back(constant_track("hdv", 40.0, 0.0, 12.0, pb.horizon, pb.dt));
  pb.safety.t_safe = 2.5;
  const OptimizeReport a = optimize_maneuver(pb, OptimizerConfig{});
  const OptimizeReport b = optimize_maneuver(pb, OptimizerConfig{});
  ASSERT_EQ(a.cost_history.size(), b.cost_history.size());
  for (std::size_t i = 0; i < a.cost_history.size(); ++i) {
    EXPECT_EQ(a.cost_history[i], b.cost_history[i]);
  }
  ASSERT_EQ(a.final_params.size(), b.final_params.size());
  for (std::size_t i = 0; i < a.final_params.size(); ++i) {
    EXPECT_EQ(a.final_params[i], b.final_params[i]);
  }
  EXPECT_EQ(a.best_seed, b.best_seed);
}

TEST(OptimizeManeuverTest, OvertakeLegsOptimizeJointly)
{
  PlanningProblem pb;
  pb.maneuver.kind = ManeuverKind::kOvertake;
  pb.maneuver.displacement = 3.5;
  pb.maneuver.t1 = 1.0;
  pb.maneuver.t2 = 4.0;
  pb.maneuver.t3 = 8.0;
  pb.maneuver.t4 = 11.0;
  pb.speed = 20.0;
  pb.horizon = 14.0;
  pb.tracks.push_back(constant_track("hdv", 30.0, 0.0, 12.0, pb.horizon, pb.dt));
  pb.safety.t_safe = 3.0;
  const OptimizeReport report = optimize_maneuver(pb, OptimizerConfig{});
  ASSERT_TRUE(report.final_plan.has_value());
  EXPECT_EQ(report.final_params.size(), 8u);
  const ManeuverPlan & plan = *report.final_plan;
  EXPECT_NEAR(plan.lateral(0.5, 0), 0.0, 1e-9);
  EXPECT_NEAR(plan.lateral(4.0, 0), 3.5, 1e-9);   // out by end of leg 1
  EXPECT_NEAR(plan.lateral(11.0, 0), 0.0, 1e-9);  // home by end of leg 2
  EXPECT_NEAR(plan.lateral(14.0, 0), 0.0, 1e-9);
  for (std::size_t i = 1; i < report.cost_history.size(); ++i) {
    EXPECT_LE(report.cost_history[i], report.cost_history[i - 1]);
  }
}

TEST(OptimizeManeuverTest, GridOracleDominanceWithActiveTraffic)
{
  // Dense consecutive-lane-change geometry: the TTC term is active, so this
  // exercises the rough part of the landscape.
  PlanningProblem pb;
  pb.maneuver.kind = ManeuverKind::kConsecutive;
  pb.maneuver.delta_y = 7.0;
  pb.maneuver.leg_duration = 3.0;
  pb.maneuver.junction = JunctionState{3.0, 3.5, 0.0, 0.0};
  pb.speed = 15.0;
  pb.horizon = 12.0;
  pb.tracks.push_back(constant_track("hdv1", 10.0, 0.0, 15.0, pb.horizon, pb.dt));
  pb.tracks.push_back(constant_track("hdv2", 3.0, 3.5, 13.0, pb.horizon, pb.dt));
  pb.tracks.push_back(constant_track("hdv3", 12.0, 7.0, 10.0, pb.horizon, pb.dt));
  pb.limits.j_y_max = 10.0;
  const OptimizeReport report = optimize_maneuver(pb, OptimizerConfig{});
  ASSERT_TRUE(report.converged);

  CostEvaluator eval(pb.tracks, pb.safety, pb.weights, pb.limits, 0.0, pb.horizon, pb.dt);
  const double T = 6.0, dy = 7.0;
  const double lo[4] = {0.05 * T, -0.25 * dy, -3.0 * dy / T, -10.0 * dy / (T * T)};
  const double hi[4] = {0.95 * T, 1.25 * dy, 3.0 * dy / T, 10.0 * dy / (T * T)};
  double best_grid = 1e300;
  for (int a = 0; a < 9; ++a) {
    for (int b = 0; b < 9; ++b) {
      for (int c = 0; c < 9; ++c) {
        for (int d = 0; d < 9; ++d) {
          const JunctionState j{lo[0] + (hi[0] - lo[0]) * a / 8.0,
                                lo[1] + (hi[1] - lo[1]) * b / 8.0,
                                lo[2] + (hi[2] - lo[2]) * c / 8.0,
                                lo[3] + (hi[3] - lo[3]) * d / 8.0};
          best_grid = std::min(
            best_grid,
            eval.evaluate(double_lane_change(dy, j, T, pb.speed, pb.horizon)).total);
        }
      }
    }
  }
  const double final_cost = report.final_breakdown.total;
  EXPECT_LE(final_cost, best_grid + 1e-6 * (1.0 + std::fabs(final_cost)));
}

TEST(OptimizeManeuverTest, TSafeSensitivityLocallyLipschitz)
{
  // Optimized parameters over a T_safe grid in [1.5, 5.0]: the scaled
  // deviation between adjacent solutions stays bounded by L * |dT_safe|.
  PlanningProblem pb = lane_change_problem(18.0, 5.0, 18.0, 8.0);
  pb.tracks.push_back(constant_track("hdv", 25.0, 0.0, 10.0, pb.horizon, pb.dt));
  pb.limits.a_y_max = 10.0;
  pb.limits.j_y_max = 100.0;
  const double widths[4] = {0.9 * 5.0, 1.5 * 18.0, 2.0 * 3.0 * 18.0 / 5.0,
                            2.0 * 10.0 * 18.0 / 25.0};
  std::vector<double> previous;
  constexpr double kLipschitzBound = 0.05;  // scaled units per second of T_safe
  OptimizerConfig cfg;
  cfg.max_iters = 150;  // settle deep into the valley for a stable comparison
  for (double t_safe = 1.5; t_safe <= 5.01; t_safe += 0.5) {
    pb.safety.t_safe = t_safe;
    const OptimizeReport report = optimize_maneuver(pb, cfg);
    ASSERT_EQ(report.final_params.size(), 4u);
    if (!previous.empty()) {
      double dev = 0.0;
      for (int i = 0; i < 4; ++i) {
        const double d = (report.final_params[i] - previous[i]) / widths[i];
        dev += d * d;
      }
      EXPECT_LE(std::sqrt(dev), kLipschitzBound * 0.5) << "t_safe " << t_safe;
    }
    previous = report.final_params;
  }
}

TEST(ClassifyAndReplanTest, EmptyTrackListIsSafe)
{
  PlanningProblem pb = lane_change_problem(3.5, 5.0, 15.0, 8.0);
  const ManeuverPlan plan = closed_form_plan(pb.maneuver, pb.speed, pb.horizon);
  const Verdict v = classify_and_replan(plan, pb.tracks, pb.safety, pb, OptimizerConfig{});
  EXPECT_FALSE(v.risky);
  EXPECT_FALSE(v.replacement.has_value());
}

TEST(ClassifyAndReplanTest, LaneHoldBehindSlowerVehicleIsRisky)
{
  // Linear-gap oracle: ttc(t) = (30 - 5t)/5, crosses 2.5 s at
  // t = 3.5 within the horizon.
  PlanningProblem pb = lane_change_problem(0.0, 8.0, 20.0, 8.0);
  pb.safety.t_safe = 2.5;
  pb.tracks.push_back(constant_track("hdv", 30.0, 0.0, 15.0, pb.horizon, pb.dt));
  const ManeuverPlan hold = single_lane_change(0.0, 8.0, 20.0, 8.0);
  const Verdict v = classify_and_replan(hold, pb.tracks, pb.safety, pb, OptimizerConfig{});
  EXPECT_TRUE(v.risky);
  EXPECT_LT(v.min_ttc, 2.5);
  ASSERT_TRUE(v.replacement.has_value());
  // A faster-closing lead (8 m/s) is also risky.
  PlanningProblem pb2 = lane_change_problem(0.0, 8.0, 20.0, 8.0);
  pb2.safety.t_safe = 3.0;
  pb2.tracks.push_back(constant_track("hdv", 30.0, 0.0, 12.0, pb2.horizon, pb2.dt));
  const Verdict v2 =
    classify_and_replan(hold, pb2.tracks, pb2.safety, pb2, OptimizerConfig{});
  EXPECT_TRUE(v2.risky);
}

TEST(ClassifyAndReplanTest, ExactThresholdIsSafe)
{
  // dt = 1/16 keeps every sampled time, gap and ttc exact in binary:
  // ttc(t) = 6 - t reaches exactly 3.0 at the final sample.
  PlanningProblem pb = lane_change_problem(0.0, 3.0, 10.0, 3.0);
  pb.dt = 0.0625;
  pb.safety.t_safe = 3.0;
  pb.safety.safe_distance = 5.0;
  pb.tracks.push_back(constant_track("hdv", 30.0, 0.0, 5.0, 3.0, 0.0625));
  const ManeuverPlan hold = single_lane_change(0.0, 3.0, 10.0, 3.0);
  const Verdict v = classify_and_replan(hold, pb.tracks, pb.safety, pb, OptimizerConfig{});
  EXPECT_DOUBLE_EQ(v.min_ttc, 3.0);
  EXPECT_FALSE(v.risky);
}

TEST(ClassifyAndReplanTest, ReplacementPreservesEndpoints)
{
  PlanningProblem pb = lane_change_problem(3.5, 5.0, 15.0, 8.0);
  pb.safety.t_safe = 4.0;
  pb.tracks.push_back(constant_track("hdv", 12.0, 3.5, 10.0, pb.horizon, pb.dt));
  const ManeuverPlan plan = closed_form_plan(pb.maneuver, pb.speed, pb.horizon);
  const Verdict v = classify_and_replan(plan, pb.tracks, pb.safety, pb, OptimizerConfig{});
  ASSERT_TRUE(v.risky);
  ASSERT_TRUE(v.replacement.has_value());
  EXPECT_NEAR(v.replacement->lateral(5.0, 0), 3.5, 1e-9);
  EXPECT_NEAR(v.replacement->lateral(8.0, 0), 3.5, 1e-9);
}

}  // namespace
}  // namespace dqplan
