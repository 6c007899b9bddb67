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

#include "dqplan/simulation.hpp"

#include <cmath>
#include <stdexcept>

namespace dqplan {
namespace {

double curvature_exact(double speed, double vy, double ay)
{
  const double s2 = speed * speed + vy * vy;
  return speed * ay / (s2 * std::sqrt(s2));
}

}  // namespace

void ScenarioConfig::validate() const
{
  if (!(dt > 0.0)) {
    throw std::domain_error("scenario.dt: must be positive");
  }
  if (!(horizon > 0.0)) {
    throw std::domain_error("scenario.horizon: must be positive");
  }
  if (!(ego.speed > 0.0)) {
    throw std::domain_error("scenario.ego.speed: must be positive");
  }
  if (horizon + 1e-9 < maneuver.total_duration()) {
    throw std::domain_error("scenario.horizon: must cover the maneuver terminal time");
  }
  if (!(replan_cooldown >= 0.0)) {
    throw std::domain_error("scenario.replan_cooldown: must be non-negative");
  }
  safety.validate();
  weights.validate();
  limits.validate();
  optimizer.validate();
}

const char * to_string(PlannerId id)
{
  switch (id) {
    case PlannerId::kProposed:
      return "proposed";
    case PlannerId::kClosedQuintic:
      return "quintic";
    case PlannerId::kClosedDoubleQuintic:
      return "double_quintic";
    case PlannerId::kBezier:
      return "bezier";
    case PlannerId::kBSpline:
      return "bspline";
  }
  return "unknown";
}

std::optional<PlannerId> planner_from_string(const std::string & name)
{
  if (name == "proposed") return PlannerId::kProposed;
  if (name == "quintic") return PlannerId::kClosedQuintic;
  if (name == "double_quintic") return PlannerId::kClosedDoubleQuintic;
  if (name == "bezier") return PlannerId::kBezier;
  if (name == "bspline") return PlannerId::kBSpline;
  return std::nullopt;
}

std::vector<ObstacleTrack> build_tracks(const ScenarioConfig & config,
                                        const ManeuverPlan & ego_plan)
{
  std::vector<ObstacleTrack> tracks;
  tracks.reserve(config.obstacles.size());
  for (const ObstacleSpec & spec : config.obstacles) {
    // Positions shift into the ego-start frame so the planner's x(t) = v t
    // origin and the obstacle data agree.
    const double x0 = spec.x0 - config.ego.x;
    const double y0 = spec.y0 - config.ego.y;
    switch (spec.kind) {
      case TrackKind::kConstant:
        tracks.push_back(constant_track(spec.id, x0, y0, spec.speed, config.horizon,
                                        config.dt, spec.lateral_speed));
        break;
      case TrackKind::kDelayedOffset:
        tracks.push_back(delayed_offset_track(spec.id, ego_plan, spec.tau, spec.delta,
                                              config.horizon, config.dt));
        break;
      case TrackKind::kBraking:
        tracks.push_back(braking_track(spec.id, x0, y0, spec.speed, spec.decel, spec.v_floor,
                                       config.horizon, config.dt));
        break;
      case TrackKind::kOscillating:
        tracks.push_back(oscillating_track(spec.id, x0, y0, spec.v_mean, spec.v_amp,
                                           spec.period, config.horizon, config.dt));
        break;
      case TrackKind::kReplay: {
        const auto samples = read_replay_csv_file(spec.csv_path);
        ReplayTransform transform = spec.transform;
        transform.tx -= config.ego.x;
        transform.ty -= config.ego.y;
        tracks.push_back(replay_track(spec.id, samples, transform, spec.smoothing_window,
                                      config.horizon, config.dt));
        break;
      }
    }
  }
  return tracks;
}

SimLog run_scenario(const ScenarioConfig & config, PlannerId planner)
{
  config.validate();

  const double speed = config.ego.speed;
  const ManeuverPlan reference = closed_form_plan(config.maneuver, speed, config.horizon);
  const std::vector<ObstacleTrack> tracks = build_tracks(config, reference);

  PlanningProblem problem;
  problem.maneuver = config.maneuver;
  problem.speed = speed;
  problem.horizon = config.horizon;
  problem.dt = config.dt;
  problem.tracks = tracks;
  problem.safety = config.safety;
  problem.weights = config.weights;
  problem.limits = config.limits;

  SimLog log;
  log.scenario = config.name;
  log.planner = to_string(planner);
  log.dt = config.dt;
  log.speed = speed;
  for (const auto & track : tracks) {
    log.obstacle_ids.push_back(track.id());
  }

  ManeuverPlan active = reference;
  if (planner == PlannerId::kProposed) {
    if (config.optimizer_enabled) {
      OptimizeReport report = optimize_maneuver(problem, config.optimizer);
      if (report.final_plan.has_value()) {
        active = std::move(*report.final_plan);
      }
    }
  } else {
    const BaselineKind kind = planner == PlannerId::kClosedQuintic
                                ? BaselineKind::kClosedQuintic
                              : planner == PlannerId::kClosedDoubleQuintic
                                ? BaselineKind::kClosedDoubleQuintic
                              : planner == PlannerId::kBezier ? BaselineKind::kBezier
                                                              : BaselineKind::kBSpline;
    active = plan_baseline_maneuver(kind, config.maneuver, speed, config.horizon);
  }

  const auto n = static_cast<std::size_t>(std::floor(config.horizon / config.dt + 1e-9));
  const bool may_replan = planner == PlannerId::kProposed && config.replan_enabled &&
                          config.optimizer_enabled && !tracks.empty();
  double last_replan = 0.0;  // the initial optimization counts as the first plan

  for (std::size_t k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * config.dt;
    bool replanned_now = false;

    if (may_replan && t > 0.0 && t - last_replan >= config.replan_cooldown - 1e-9 &&
        t < config.maneuver.total_duration()) {
      const auto [min_ttc, min_gap] = min_ttc_and_gap(active, tracks, t, config.dt);
      const bool risky =
        min_ttc < config.safety.t_safe || min_gap < config.safety.safe_distance;
      if (risky) {
        PlanningProblem replan = problem;
        replan.t0 = t;
        replan.y0 = active.lateral(t, 0);
        replan.v0 = active.lateral(t, 1);
        replan.a0 = active.lateral(t, 2);
        OptimizeReport report = optimize_maneuver(replan, config.optimizer);
        if (report.final_plan.has_value()) {
          ReplanEvent event;
          event.t = t;
          event.reason = min_ttc < config.safety.t_safe ? "ttc_below_threshold"
                                                        : "gap_below_safe_distance";
          event.iterations = report.iterations;
          event.cost_before = report.cost_history.front();
          event.cost_after = report.cost_history.back();
          log.replans.push_back(std::move(event));
          active = std::move(*report.final_plan);
          last_replan = t;
          replanned_now = true;
        }
      }
    }

    StepRecord record;
    record.t = t;
    record.replanned = replanned_now;
    const double y = active.lateral(t, 0);
    const double vy = active.lateral(t, 1);
    record.x = config.ego.x + speed * t;
    record.y = config.ego.y + y;
    record.vy = vy;
    record.ay = active.lateral(t, 2);
    record.jy = active.lateral(t, 3);
    record.curvature = curvature_exact(speed, vy, record.ay);
    PathSample ego;
    ego.x = speed * t;
    ego.y = y;
    ego.vx = speed;
    ego.vy = vy;
    record.gaps.reserve(tracks.size());
    record.ttcs.reserve(tracks.size());
    for (const auto & track : tracks) {
      const TTCSample s = ttc(ego, track.state_at(t), t);
      record.gaps.push_back(s.gap);
      record.ttcs.push_back(s.ttc);
    }
    log.steps.push_back(std::move(record));
  }

  for (const StepRecord & step : log.steps) {
    for (std::size_t i = 0; i < step.gaps.size(); ++i) {
      if (step.ttcs[i] < config.safety.t_safe || step.gaps[i] < config.safety.safe_distance) {
        log.final_risky = true;
      }
    }
  }
  return log;
}

void apply_override(ScenarioConfig & config, const std::string & path, double value)
{
  auto as_bool = [&]() { return value != 0.0; };
  if (path == "safety.t_safe") {
    config.safety.t_safe = value;
  } else if (path == "safety.safe_distance") {
    config.safety.safe_distance = value;
  } else if (path == "weights.lambda1") {
    config.weights.lambda1 = value;
  } else if (path == "weights.lambda2") {
    config.weights.lambda2 = value;
  } else if (path == "weights.lambda3") {
    config.weights.lambda3 = value;
  } else if (path == "weights.lambda4") {
    config.weights.lambda4 = value;
  } else if (path == "weights.lambda5") {
    config.weights.lambda5 = value;
  } else if (path == "limits.a_y_max") {
    config.limits.a_y_max = value;
  } else if (path == "limits.j_y_max") {
    config.limits.j_y_max = value;
  } else if (path == "limits.delta_max") {
    config.limits.delta_max = value;
  } else if (path == "limits.wheelbase") {
    config.limits.wheelbase = value;
  } else if (path == "maneuver.leg_duration") {
    // Shared phase-timing knob: consecutive legs directly; overtake phase
    // ends move with the leg length.
    config.maneuver.leg_duration = value;
    config.maneuver.t2 = config.maneuver.t1 + value;
    config.maneuver.t4 = config.maneuver.t3 + value;
    if (config.maneuver.kind == ManeuverKind::kLaneChange) {
      config.maneuver.duration = value;
    }
  } else if (path == "maneuver.duration") {
    config.maneuver.duration = value;
  } else if (path == "maneuver.t_start") {
    config.maneuver.t_start = value;
  } else if (path == "maneuver.t1") {
    // Shift phase 1 keeping its length.
    config.maneuver.t2 += value - config.maneuver.t1;
    config.maneuver.t1 = value;
  } else if (path == "maneuver.t3") {
    config.maneuver.t4 += value - config.maneuver.t3;
    config.maneuver.t3 = value;
  } else if (path == "maneuver.delta_y") {
    config.maneuver.delta_y = value;
  } else if (path == "maneuver.displacement") {
    config.maneuver.displacement = value;
  } else if (path == "maneuver.peak") {
    config.maneuver.peak = value;
  } else if (path == "maneuver.direction") {
    config.maneuver.direction = value < 0 ? -1 : 1;
  } else if (path == "ego.speed") {
    config.ego.speed = value;
  } else if (path == "dt") {
    config.dt = value;
  } else if (path == "horizon") {
    config.horizon = value;
  } else if (path == "replan_enabled") {
    config.replan_enabled = as_bool();
  } else if (path == "optimizer_enabled") {
    config.optimizer_enabled = as_bool();
  } else if (path == "optimizer.optimize_duration") {
    config.optimizer.optimize_duration = as_bool();
  } else if (path == "optimizer.max_iters") {
    config.optimizer.max_iters = static_cast<int>(value);
  } else {
    throw std::domain_error("unknown override field: " + path);
  }
}

std::vector<AblationResult> run_ablation(const ScenarioConfig & base,
                                         std::span<const AblationVariant> variants,
                                         PlannerId planner)
{
  if (variants.empty()) {
    throw std::domain_error("run_ablation: empty variant list");
  }
  std::vector<AblationResult> results;
  results.reserve(variants.size());
  for (const AblationVariant & variant : variants) {
    ScenarioConfig config = base;
    config.name = base.name + "." + variant.name;
    for (const auto & [path, value] : variant.overrides) {
      apply_override(config, path, value);
    }
    AblationResult result;
    result.name = variant.name;
    result.log = run_scenario(config, planner);
    result.summary = summarize(result.log, config.safety);
    results.push_back(std::move(result));
  }
  return results;
}

}  // namespace dqplan
