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

#include "dqplan/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace dqplan {
namespace {

using nlohmann::json;

class Reader {
 public:
  Reader(const json & node, std::string path) : node_(node), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string & what) const
  {
    throw ConfigError(path_ + ": " + what);
  }

  bool has(const std::string & key) const { return node_.contains(key); }

  Reader child(const std::string & key) const
  {
    if (!node_.contains(key)) {
      throw ConfigError(path_ + "." + key + ": missing required field");
    }
    return Reader(node_.at(key), path_ + "." + key);
  }

  Reader element(std::size_t i) const
  {
    return Reader(node_.at(i), path_ + "[" + std::to_string(i) + "]");
  }

  std::size_t array_size() const
  {
    if (!node_.is_array()) {
      fail("expected an array");
    }
    return node_.size();
  }

  double number() const
  {
    if (!node_.is_number()) {
      fail("expected a number");
    }
    const double v = node_.get<double>();
    if (!std::isfinite(v)) {
      fail("expected a finite number");
    }
    return v;
  }

  bool boolean() const
  {
    if (!node_.is_boolean()) {
      fail("expected a boolean");
    }
    return node_.get<bool>();
  }

  std::string text() const
  {
    if (!node_.is_string()) {
      fail("expected a string");
    }
    return node_.get<std::string>();
  }

  double number_or(const std::string & key, double fallback) const
  {
    return has(key) ? child(key).number() : fallback;
  }

  bool bool_or(const std::string & key, bool fallback) const
  {
    return has(key) ? child(key).boolean() : fallback;
  }

  const json & raw() const { return node_; }
  const std::string & path() const { return path_; }

 private:
  const json & node_;
  std::string path_;
};

ManeuverSpec parse_maneuver(const Reader & r)
{
  ManeuverSpec spec;
  const std::string kind = r.child("kind").text();
  if (kind == "lane_change") {
    spec.kind = ManeuverKind::kLaneChange;
    spec.delta_y = r.child("delta_y").number();
    spec.duration = r.child("duration").number();
    spec.leg_duration = spec.duration;
    spec.t_start = r.number_or("t_start", 0.0);
  } else if (kind == "consecutive") {
    spec.kind = ManeuverKind::kConsecutive;
    spec.delta_y = r.child("delta_y").number();
    spec.leg_duration = r.child("leg_duration").number();
    spec.t_start = r.number_or("t_start", 0.0);
    if (r.has("junction")) {
      const Reader j = r.child("junction");
      spec.junction = JunctionState{j.child("t_s").number(), j.child("y_s").number(),
                                    j.number_or("v_s", 0.0), j.number_or("a_s", 0.0)};
    }
  } else if (kind == "overtake") {
    spec.kind = ManeuverKind::kOvertake;
    spec.displacement = r.child("displacement").number();
    spec.t1 = r.child("t1").number();
    spec.t2 = r.child("t2").number();
    spec.t3 = r.child("t3").number();
    spec.t4 = r.child("t4").number();
    spec.leg_duration = spec.t2 - spec.t1;
  } else if (kind == "avoidance") {
    spec.kind = ManeuverKind::kAvoidance;
    spec.peak = r.child("peak").number();
    spec.direction = static_cast<int>(r.number_or("direction", 1.0)) < 0 ? -1 : 1;
    spec.t_enter = r.child("t_enter").number();
    spec.t_exit = r.child("t_exit").number();
  } else {
    r.child("kind").fail("unknown maneuver kind '" + kind + "'");
  }
  return spec;
}

ObstacleSpec parse_obstacle(const Reader & r, const std::string & base_dir)
{
  ObstacleSpec spec;
  spec.id = r.child("id").text();
  const std::string kind = r.child("kind").text();
  if (kind == "constant") {
    spec.kind = TrackKind::kConstant;
    spec.x0 = r.child("x0").number();
    spec.y0 = r.child("y0").number();
    spec.speed = r.child("speed").number();
    spec.lateral_speed = r.number_or("lateral_speed", 0.0);
  } else if (kind == "delayed_offset") {
    spec.kind = TrackKind::kDelayedOffset;
    spec.tau = r.child("tau").number();
    spec.delta = r.child("delta").number();
  } else if (kind == "braking") {
    spec.kind = TrackKind::kBraking;
    spec.x0 = r.child("x0").number();
    spec.y0 = r.child("y0").number();
    spec.speed = r.child("speed").number();
    spec.decel = r.child("decel").number();
    spec.v_floor = r.child("v_floor").number();
  } else if (kind == "oscillating") {
    spec.kind = TrackKind::kOscillating;
    spec.x0 = r.child("x0").number();
    spec.y0 = r.child("y0").number();
    spec.v_mean = r.child("v_mean").number();
    spec.v_amp = r.child("v_amp").number();
    spec.period = r.child("period").number();
  } else if (kind == "replay") {
    spec.kind = TrackKind::kReplay;
    spec.csv_path = r.child("csv").text();
    if (!base_dir.empty() && std::filesystem::path(spec.csv_path).is_relative()) {
      spec.csv_path = (std::filesystem::path(base_dir) / spec.csv_path).string();
    }
    if (r.has("transform")) {
      const Reader t = r.child("transform");
      spec.transform.scale = t.number_or("scale", 1.0);
      spec.transform.rotation = t.number_or("rotation", 0.0);
      spec.transform.tx = t.number_or("tx", 0.0);
      spec.transform.ty = t.number_or("ty", 0.0);
    }
    spec.smoothing_window = static_cast<int>(r.number_or("smoothing_window", 1.0));
  } else {
    r.child("kind").fail("unknown obstacle kind '" + kind + "'");
  }
  return spec;
}

std::string format_number(double v)
{
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

json json_number(double v)
{
  if (std::isfinite(v)) {
    return v;
  }
  return nullptr;
}

}  // namespace

ScenarioConfig scenario_from_json(const json & doc, const std::string & base_dir)
{
  const Reader root(doc, "scenario");
  ScenarioConfig config;
  if (root.has("name")) {
    config.name = root.child("name").text();
  }
  if (root.has("ego")) {
    const Reader ego = root.child("ego");
    config.ego.x = ego.number_or("x", 0.0);
    config.ego.y = ego.number_or("y", 0.0);
    config.ego.speed = ego.number_or("speed", 15.0);
  }
  config.maneuver = parse_maneuver(root.child("maneuver"));
  if (root.has("obstacles")) {
    const Reader obstacles = root.child("obstacles");
    for (std::size_t i = 0; i < obstacles.array_size(); ++i) {
      config.obstacles.push_back(parse_obstacle(obstacles.element(i), base_dir));
    }
  }
  if (root.has("lanes")) {
    const Reader lanes = root.child("lanes");
    const Reader centers = lanes.child("centers");
    std::vector<double> values;
    for (std::size_t i = 0; i < centers.array_size(); ++i) {
      values.push_back(centers.element(i).number());
    }
    try {
      config.lanes = LaneModel(lanes.child("width").number(), std::move(values));
    } catch (const std::domain_error & e) {
      lanes.fail(e.what());
    }
  }
  if (root.has("safety")) {
    const Reader safety = root.child("safety");
    config.safety.t_safe = safety.number_or("t_safe", config.safety.t_safe);
    config.safety.safe_distance =
      safety.number_or("safe_distance", config.safety.safe_distance);
    config.safety.normalized_penalty =
      safety.bool_or("normalized_penalty", config.safety.normalized_penalty);
    if (safety.has("ttc_thresholds")) {
      const Reader thresholds = safety.child("ttc_thresholds");
      config.safety.ttc_thresholds.clear();
      for (std::size_t i = 0; i < thresholds.array_size(); ++i) {
        config.safety.ttc_thresholds.push_back(thresholds.element(i).number());
      }
    }
  }
  if (root.has("weights")) {
    const Reader weights = root.child("weights");
    config.weights.lambda1 = weights.number_or("lambda1", config.weights.lambda1);
    config.weights.lambda2 = weights.number_or("lambda2", config.weights.lambda2);
    config.weights.lambda3 = weights.number_or("lambda3", config.weights.lambda3);
    config.weights.lambda4 = weights.number_or("lambda4", config.weights.lambda4);
    config.weights.lambda5 = weights.number_or("lambda5", config.weights.lambda5);
    config.weights.accel_smoothness =
      weights.bool_or("accel_smoothness", config.weights.accel_smoothness);
  }
  if (root.has("limits")) {
    const Reader limits = root.child("limits");
    config.limits.a_y_max = limits.number_or("a_y_max", config.limits.a_y_max);
    config.limits.j_y_max = limits.number_or("j_y_max", config.limits.j_y_max);
    config.limits.delta_max = limits.number_or("delta_max", config.limits.delta_max);
    config.limits.wheelbase = limits.number_or("wheelbase", config.limits.wheelbase);
  }
  if (root.has("optimizer")) {
    const Reader optimizer = root.child("optimizer");
    config.optimizer.max_iters =
      static_cast<int>(optimizer.number_or("max_iters", config.optimizer.max_iters));
    config.optimizer.tol_cost = optimizer.number_or("tol_cost", config.optimizer.tol_cost);
    config.optimizer.tol_step = optimizer.number_or("tol_step", config.optimizer.tol_step);
    config.optimizer.single_quintic =
      optimizer.bool_or("single_quintic", config.optimizer.single_quintic);
    config.optimizer.optimize_duration =
      optimizer.bool_or("optimize_duration", config.optimizer.optimize_duration);
  }
  config.optimizer_enabled = root.bool_or("optimizer_enabled", true);
  config.replan_enabled = root.bool_or("replan_enabled", true);
  config.replan_cooldown = root.number_or("replan_cooldown", 0.5);
  config.dt = root.number_or("dt", 0.05);
  config.horizon = root.child("horizon").number();
  if (root.has("metadata")) {
    for (const auto & [key, value] : root.child("metadata").raw().items()) {
      config.metadata[key] = value.is_string() ? value.get<std::string>() : value.dump();
    }
  }

  try {
    config.validate();
  } catch (const std::domain_error & e) {
    throw ConfigError(e.what());
  }
  return config;
}

ScenarioConfig load_scenario_file(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(path + ": cannot open scenario file");
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error & e) {
    throw ConfigError(path + ": " + e.what());
  }
  return scenario_from_json(doc, std::filesystem::path(path).parent_path().string());
}

std::vector<AblationVariant> variants_from_json(const json & doc)
{
  const Reader root(doc, "variants_file");
  const Reader variants = root.child("variants");
  if (variants.array_size() == 0) {
    variants.fail("variant list must not be empty");
  }
  std::vector<AblationVariant> out;
  for (std::size_t i = 0; i < variants.array_size(); ++i) {
    const Reader v = variants.element(i);
    AblationVariant variant;
    variant.name = v.child("name").text();
    if (v.has("overrides")) {
      const Reader overrides = v.child("overrides");
      for (const auto & [key, value] : overrides.raw().items()) {
        if (value.is_boolean()) {
          variant.overrides[key] = value.get<bool>() ? 1.0 : 0.0;
        } else if (value.is_number()) {
          variant.overrides[key] = value.get<double>();
        } else {
          overrides.fail("override '" + key + "' must be a number or boolean");
        }
      }
    }
    out.push_back(std::move(variant));
  }
  return out;
}

std::vector<AblationVariant> load_variants_file(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(path + ": cannot open variants file");
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error & e) {
    throw ConfigError(path + ": " + e.what());
  }
  return variants_from_json(doc);
}

std::string sim_log_to_csv(const SimLog & log)
{
  std::ostringstream out;
  out << "t,x,y,vy,ay,jy,curvature,replan";
  for (const auto & id : log.obstacle_ids) {
    out << ",gap_" << id;
  }
  for (const auto & id : log.obstacle_ids) {
    out << ",ttc_" << id;
  }
  out << "\n";
  for (const StepRecord & step : log.steps) {
    out << format_number(step.t) << "," << format_number(step.x) << ","
        << format_number(step.y) << "," << format_number(step.vy) << ","
        << format_number(step.ay) << "," << format_number(step.jy) << ","
        << format_number(step.curvature) << "," << (step.replanned ? 1 : 0);
    for (double g : step.gaps) {
      out << "," << format_number(g);
    }
    for (double ttc_value : step.ttcs) {
      out << "," << format_number(ttc_value);
    }
    out << "\n";
  }
  return out.str();
}

json sim_log_to_json(const SimLog & log)
{
  json steps = json::array();
  for (const StepRecord & step : log.steps) {
    json gaps = json::array();
    json ttcs = json::array();
    for (double g : step.gaps) gaps.push_back(json_number(g));
    for (double t : step.ttcs) ttcs.push_back(json_number(t));
    steps.push_back({{"t", step.t},
                     {"x", step.x},
                     {"y", step.y},
                     {"vy", step.vy},
                     {"ay", step.ay},
                     {"jy", step.jy},
                     {"curvature", step.curvature},
                     {"replanned", step.replanned},
                     {"gaps", std::move(gaps)},
                     {"ttcs", std::move(ttcs)}});
  }
  json replans = json::array();
  for (const ReplanEvent & event : log.replans) {
    replans.push_back({{"t", event.t},
                       {"reason", event.reason},
                       {"iterations", event.iterations},
                       {"cost_before", event.cost_before},
                       {"cost_after", event.cost_after}});
  }
  return {{"scenario", log.scenario}, {"planner", log.planner},
          {"dt", log.dt},             {"speed", log.speed},
          {"obstacles", log.obstacle_ids}, {"steps", std::move(steps)},
          {"replans", std::move(replans)}, {"final_risky", log.final_risky}};
}

json summary_to_json(const MetricSummary & summary)
{
  json fractions = json::object();
  for (const auto & [threshold, fraction] : summary.ttc_below_fractions) {
    char key[32];
    std::snprintf(key, sizeof(key), "%g", threshold);
    fractions[key] = fraction;
  }
  return {{"min_ttc", json_number(summary.min_ttc)},
          {"ttc_violation_count", summary.ttc_violation_count},
          {"min_gap", json_number(summary.min_gap)},
          {"avg_gap", json_number(summary.avg_gap)},
          {"ttc_below_fractions", std::move(fractions)},
          {"max_curvature", summary.max_curvature},
          {"avg_curvature", summary.avg_curvature},
          {"max_lateral_jerk", summary.max_lateral_jerk},
          {"rms_lateral_jerk", summary.rms_lateral_jerk},
          {"avg_abs_lateral_jerk", summary.avg_abs_lateral_jerk},
          {"longitudinal_distance", summary.longitudinal_distance},
          {"total_time", summary.total_time}};
}

}  // namespace dqplan
