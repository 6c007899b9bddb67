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

#ifndef DQPLAN_SIMULATION_HPP_
#define DQPLAN_SIMULATION_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dqplan/baselines.hpp"
#include "dqplan/cost.hpp"
#include "dqplan/geometry.hpp"
#include "dqplan/maneuver.hpp"
#include "dqplan/metrics.hpp"
#include "dqplan/optimizer.hpp"
#include "dqplan/safety.hpp"
#include "dqplan/sim_log.hpp"
#include "dqplan/traffic.hpp"

namespace dqplan {

struct EgoInit {
  double x{0.0};
  double y{0.0};
  double speed{15.0};
};

/// Obstacle description as it appears in scenario files; one field set per
/// kind is meaningful.
struct ObstacleSpec {
  std::string id;
  TrackKind kind{TrackKind::kConstant};
  // constant / braking / oscillating
  double x0{0.0};
  double y0{0.0};
  double speed{0.0};
  double lateral_speed{0.0};
  // delayed_offset
  double tau{0.0};
  double delta{0.0};
  // braking
  double decel{0.0};
  double v_floor{0.0};
  // oscillating
  double v_mean{0.0};
  double v_amp{0.0};
  double period{1.0};
  // replay
  std::string csv_path;
  ReplayTransform transform;
  int smoothing_window{1};
};

struct ScenarioConfig {
  std::string name{"scenario"};
  EgoInit ego;
  ManeuverSpec maneuver;
  std::vector<ObstacleSpec> obstacles;
  LaneModel lanes{3.5, {0.0, 3.5}};
  SafetyParams safety;
  CostWeights weights;
  ActuationLimits limits;
  OptimizerConfig optimizer;
  bool optimizer_enabled{true};
  bool replan_enabled{true};
  double replan_cooldown{0.5};  // [s] minimum spacing between replans
  double dt{0.05};
  double horizon{12.0};
  std::map<std::string, std::string> metadata;  // free-form labels (ramp L/H, ...)

  void validate() const;
};

enum class PlannerId { kProposed, kClosedQuintic, kClosedDoubleQuintic, kBezier, kBSpline };

const char * to_string(PlannerId id);
std::optional<PlannerId> planner_from_string(const std::string & name);

/// Obstacle tracks for a scenario, expressed in the ego-start frame (the
/// planner's x(t) = v t origin). `ego_plan` feeds delayed-offset tracks.
std::vector<ObstacleTrack> build_tracks(const ScenarioConfig & config,
                                        const ManeuverPlan & ego_plan);

/// Deterministic rollout: plan once, step ego and obstacles, evaluate
/// TTC/gap each step; the proposed planner replans on risky verdicts with a
/// cooldown, baselines never replan.
SimLog run_scenario(const ScenarioConfig & config, PlannerId planner);

struct AblationVariant {
  std::string name;
  std::map<std::string, double> overrides;  // dotted field path -> value
};

struct AblationResult {
  std::string name;
  SimLog log;
  MetricSummary summary;
};

/// Apply a single override to a scenario config; throws std::domain_error
/// naming the field when the path is unknown.
void apply_override(ScenarioConfig & config, const std::string & path, double value);

std::vector<AblationResult> run_ablation(const ScenarioConfig & base,
                                         std::span<const AblationVariant> variants,
                                         PlannerId planner = PlannerId::kProposed);

}  // namespace dqplan

#endif  // DQPLAN_SIMULATION_HPP_
