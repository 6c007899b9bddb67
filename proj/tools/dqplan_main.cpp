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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dqplan/metrics.hpp"
#include "dqplan/optimizer.hpp"
#include "dqplan/scenario_io.hpp"
#include "dqplan/simulation.hpp"
#include "dqplan/svg.hpp"

namespace {

namespace fs = std::filesystem;
using namespace dqplan;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct OutputFormats {
  bool csv{true};
  bool json{true};
  bool svg{true};
};

OutputFormats parse_formats(const std::string & spec)
{
  if (spec.empty()) {
    return {};
  }
  OutputFormats f{false, false, false};
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "csv") {
      f.csv = true;
    } else if (item == "json") {
      f.json = true;
    } else if (item == "svg") {
      f.svg = true;
    } else {
      throw ConfigError("unknown format '" + item + "' (expected csv, json or svg)");
    }
  }
  return f;
}

// Scenario paths resolve against the working directory first, then against
// PLANNER_SCENARIO_DIR.
std::string resolve_input(const std::string & path)
{
  if (fs::exists(path)) {
    return path;
  }
  if (const char * dir = std::getenv("PLANNER_SCENARIO_DIR")) {
    const fs::path candidate = fs::path(dir) / path;
    if (fs::exists(candidate)) {
      return candidate.string();
    }
  }
  throw ConfigError(path + ": scenario file not found");
}

void write_file(const fs::path & path, const std::string & content)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << content;
}

PlannerId parse_planner(const std::string & name)
{
  const auto id = planner_from_string(name);
  if (!id.has_value()) {
    throw ConfigError("unknown planner '" + name +
                      "' (expected proposed, quintic, double_quintic, bezier or bspline)");
  }
  return *id;
}

LinePlot trajectory_plot(const ScenarioConfig & config,
                         const std::vector<std::pair<std::string, const SimLog *>> & logs)
{
  LinePlot plot;
  plot.title = config.name + ": trajectory";
  plot.x_label = "x [m]";
  plot.y_label = "y [m]";
  double x_min = 1e300, x_max = -1e300;
  for (const auto & [name, log] : logs) {
    PlotSeries series;
    series.name = name;
    for (const StepRecord & step : log->steps) {
      series.points.push_back({step.x, step.y});
    }
    x_min = std::min(x_min, series.points.front().x);
    x_max = std::max(x_max, series.points.back().x);
    plot.series.push_back(std::move(series));
  }
  for (std::size_t lane = 0; lane < config.lanes.lane_count(); ++lane) {
    const auto [left, right] = lane_boundaries(config.lanes, lane);
    for (const double b : {left, right}) {
      PlotSeries boundary;
      boundary.name = lane == 0 && b == left ? "lane boundaries" : "";
      boundary.color = "#999999";
      boundary.dashed = true;
      boundary.points = {{x_min, b}, {x_max, b}};
      plot.series.push_back(std::move(boundary));
    }
  }
  return plot;
}

LinePlot gap_plot(const std::string & scenario, const std::string & obstacle_id,
                  std::size_t obstacle_index,
                  const std::vector<std::pair<std::string, const SimLog *>> & logs)
{
  LinePlot plot;
  plot.title = scenario + ": gap to " + obstacle_id;
  plot.x_label = "ego x [m]";
  plot.y_label = "gap [m]";
  for (const auto & [name, log] : logs) {
    PlotSeries series;
    series.name = name;
    for (const StepRecord & step : log->steps) {
      series.points.push_back({step.x, step.gaps[obstacle_index]});
    }
    plot.series.push_back(std::move(series));
  }
  return plot;
}

void write_simulation_outputs(const ScenarioConfig & config, const SimLog & log,
                              const MetricSummary & summary, const fs::path & out_dir,
                              const OutputFormats & formats)
{
  const std::string stem = config.name + "." + log.planner;
  if (formats.csv) {
    write_file(out_dir / (stem + ".log.csv"), sim_log_to_csv(log));
  }
  if (formats.json) {
    nlohmann::json doc = sim_log_to_json(log);
    doc["summary"] = summary_to_json(summary);
    write_file(out_dir / (stem + ".summary.json"), doc.dump(2) + "\n");
  }
  if (formats.svg) {
    const std::vector<std::pair<std::string, const SimLog *>> logs{{log.planner, &log}};
    write_file(out_dir / (stem + ".trajectory.svg"),
               render_line_plot(trajectory_plot(config, logs)));
  }
}

int cmd_simulate(const std::string & scenario_path, const std::string & planner_name,
                 const std::string & out, const OutputFormats & formats, double dt_override)
{
  ScenarioConfig config = load_scenario_file(resolve_input(scenario_path));
  if (dt_override > 0.0) {
    config.dt = dt_override;
  }
  const PlannerId planner = parse_planner(planner_name);
  const fs::path out_dir(out);
  fs::create_directories(out_dir);
  const SimLog log = run_scenario(config, planner);
  const MetricSummary summary = summarize(log, config.safety);
  write_simulation_outputs(config, log, summary, out_dir, formats);
  std::printf("%s (%s): min_gap %.3f m, min_ttc %s s, replans %zu, total_time %.2f s\n",
              config.name.c_str(), log.planner.c_str(), summary.min_gap,
              std::isinf(summary.min_ttc) ? "inf" : std::to_string(summary.min_ttc).c_str(),
              log.replans.size(), summary.total_time);
  return kExitOk;
}

int cmd_plan(const std::string & scenario_path, const std::string & planner_name,
             const std::string & out, const OutputFormats & formats, double dt_override)
{
  ScenarioConfig config = load_scenario_file(resolve_input(scenario_path));
  if (dt_override > 0.0) {
    config.dt = dt_override;
  }
  const PlannerId planner = parse_planner(planner_name);
  const fs::path out_dir(out);
  fs::create_directories(out_dir);

  const ManeuverPlan reference =
    closed_form_plan(config.maneuver, config.ego.speed, config.horizon);
  const std::vector<ObstacleTrack> tracks = build_tracks(config, reference);

  nlohmann::json report_json;
  ManeuverPlan plan = reference;
  if (planner == PlannerId::kProposed && config.optimizer_enabled) {
    PlanningProblem problem;
    problem.maneuver = config.maneuver;
    problem.speed = config.ego.speed;
    problem.horizon = config.horizon;
    problem.dt = config.dt;
    problem.tracks = tracks;
    problem.safety = config.safety;
    problem.weights = config.weights;
    problem.limits = config.limits;
    OptimizeReport report = optimize_maneuver(problem, config.optimizer);
    report_json = {{"iterations", report.iterations},
                   {"converged", report.converged},
                   {"cost_history", report.cost_history},
                   {"final_params", report.final_params},
                   {"best_seed", report.best_seed},
                   {"final_cost", report.final_breakdown.total},
                   {"smooth", report.final_breakdown.smooth},
                   {"ttc", report.final_breakdown.ttc},
                   {"bounds", report.final_breakdown.bounds}};
    if (report.final_plan.has_value()) {
      plan = std::move(*report.final_plan);
    }
  } else if (planner != PlannerId::kProposed) {
    const BaselineKind kind = planner == PlannerId::kClosedQuintic
                                ? BaselineKind::kClosedQuintic
                              : planner == PlannerId::kClosedDoubleQuintic
                                ? BaselineKind::kClosedDoubleQuintic
                              : planner == PlannerId::kBezier ? BaselineKind::kBezier
                                                              : BaselineKind::kBSpline;
    plan = plan_baseline_maneuver(kind, config.maneuver, config.ego.speed, config.horizon);
  }

  const std::string stem = config.name + "." + planner_name;
  if (formats.csv) {
    std::ostringstream csv;
    csv << "t,x,y,vy,ay,jy\n";
    const auto n = static_cast<std::size_t>(config.horizon / config.dt + 1e-9);
    for (std::size_t k = 0; k <= n; ++k) {
      const double t = static_cast<double>(k) * config.dt;
      char line[256];
      std::snprintf(line, sizeof(line), "%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n", t,
                    config.ego.x + config.ego.speed * t, config.ego.y + plan.lateral(t, 0),
                    plan.lateral(t, 1), plan.lateral(t, 2), plan.lateral(t, 3));
      csv << line;
    }
    write_file(out_dir / (stem + ".plan.csv"), csv.str());
  }
  if (formats.json && !report_json.is_null()) {
    write_file(out_dir / (stem + ".plan.json"), report_json.dump(2) + "\n");
  }
  if (formats.svg) {
    LinePlot plot;
    plot.title = config.name + ": planned trajectory (" + planner_name + ")";
    plot.x_label = "x [m]";
    plot.y_label = "y [m]";
    PlotSeries series;
    series.name = planner_name;
    const auto n = static_cast<std::size_t>(config.horizon / config.dt + 1e-9);
    for (std::size_t k = 0; k <= n; ++k) {
      const double t = static_cast<double>(k) * config.dt;
      series.points.push_back(
        {config.ego.x + config.ego.speed * t, config.ego.y + plan.lateral(t, 0)});
    }
    plot.series.push_back(std::move(series));
    write_file(out_dir / (stem + ".trajectory.svg"), render_line_plot(plot));
  }
  std::printf("%s: plan written for %s\n", config.name.c_str(), planner_name.c_str());
  return kExitOk;
}

int cmd_compare(const std::string & scenario_path, const std::vector<std::string> & planners,
                const std::string & out, const OutputFormats & formats, double dt_override)
{
  if (planners.size() < 2) {
    throw ConfigError("compare: need at least 2 planners");
  }
  ScenarioConfig config = load_scenario_file(resolve_input(scenario_path));
  if (dt_override > 0.0) {
    config.dt = dt_override;
  }
  const fs::path out_dir(out);
  fs::create_directories(out_dir);

  std::vector<SimLog> logs;
  std::vector<std::pair<std::string, MetricSummary>> summaries;
  for (const std::string & name : planners) {
    const PlannerId id = parse_planner(name);
    logs.push_back(run_scenario(config, id));
    summaries.emplace_back(name, summarize(logs.back(), config.safety));
  }
  const ComparisonTable table = compare(summaries);
  if (formats.csv) {
    write_file(out_dir / (config.name + ".compare.csv"), to_csv(table));
    for (std::size_t i = 0; i < logs.size(); ++i) {
      write_file(out_dir / (config.name + "." + planners[i] + ".log.csv"),
                 sim_log_to_csv(logs[i]));
    }
  }
  std::vector<std::pair<std::string, const SimLog *>> refs;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    refs.emplace_back(planners[i], &logs[i]);
  }
  if (formats.svg) {
    write_file(out_dir / (config.name + ".trajectories.svg"),
               render_line_plot(trajectory_plot(config, refs)));
    for (std::size_t obs = 0; obs < logs.front().obstacle_ids.size(); ++obs) {
      const std::string & id = logs.front().obstacle_ids[obs];
      write_file(out_dir / (config.name + ".gap_" + id + ".svg"),
                 render_line_plot(gap_plot(config.name, id, obs, refs)));
    }
  }
  std::fputs(to_text(table).c_str(), stdout);
  return kExitOk;
}

int cmd_ablate(const std::string & scenario_path, const std::string & variants_path,
               const std::string & planner_name, const std::string & out,
               const OutputFormats & formats, double dt_override)
{
  ScenarioConfig config = load_scenario_file(resolve_input(scenario_path));
  if (dt_override > 0.0) {
    config.dt = dt_override;
  }
  const auto variants = load_variants_file(resolve_input(variants_path));
  const PlannerId planner = parse_planner(planner_name);
  const fs::path out_dir(out);
  fs::create_directories(out_dir);

  std::vector<AblationResult> results;
  try {
    results = run_ablation(config, variants, planner);
  } catch (const std::domain_error & e) {
    throw ConfigError(e.what());
  }

  std::vector<std::pair<std::string, MetricSummary>> summaries;
  for (const auto & r : results) {
    summaries.emplace_back(r.name, r.summary);
  }
  if (formats.csv) {
    write_file(out_dir / (config.name + ".ablation.csv"), to_csv(compare(summaries)));
  }
  if (formats.json) {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto & r : results) {
      doc.push_back({{"variant", r.name}, {"summary", summary_to_json(r.summary)}});
    }
    write_file(out_dir / (config.name + ".ablation.json"), doc.dump(2) + "\n");
  }
  if (formats.svg) {
    BarPanel distance{"Longitudinal distance [m]", {}, {}};
    BarPanel curvature{"Average curvature [1/m]", {}, {}};
    BarPanel min_gap{"Minimum gap [m]", {}, {}};
    BarPanel total_time{"Total time [s]", {}, {}};
    for (const auto & r : results) {
      distance.labels.push_back(r.name);
      distance.values.push_back(r.summary.longitudinal_distance);
      curvature.labels.push_back(r.name);
      curvature.values.push_back(r.summary.avg_curvature);
      min_gap.labels.push_back(r.name);
      min_gap.values.push_back(std::isinf(r.summary.min_gap) ? 0.0 : r.summary.min_gap);
      total_time.labels.push_back(r.name);
      total_time.values.push_back(r.summary.total_time);
    }
    write_file(out_dir / (config.name + ".ablation.svg"),
               render_bar_panels(config.name + ": ablation metrics",
                                 {distance, curvature, min_gap, total_time}));
  }
  std::fputs(to_text(compare(summaries)).c_str(), stdout);
  return kExitOk;
}

int cmd_replay_check(const std::string & csv_path, int smoothing_window)
{
  const auto samples = read_replay_csv_file(resolve_input(csv_path));
  double v_min = 1e300, v_max = -1e300;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double dt = samples[i].t - samples[i - 1].t;
    const double v = std::hypot(samples[i].x - samples[i - 1].x,
                                samples[i].y - samples[i - 1].y) / dt;
    v_min = std::min(v_min, v);
    v_max = std::max(v_max, v);
  }
  const double span = samples.back().t - samples.front().t;
  const ObstacleTrack track =
    replay_track("check", samples, {}, smoothing_window, std::max(span, 1e-3), 0.05);
  std::printf("%s: %zu samples over %.2f s, speed range [%.2f, %.2f] m/s, "
              "resampled to %zu steps (window %d)\n",
              csv_path.c_str(), samples.size(), span, v_min, v_max, track.size(),
              smoothing_window);
  return kExitOk;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"TTC-penalized double-quintic lane-change planner and scenario simulator"};
  app.require_subcommand(1);

  std::string scenario, variants, out_dir{"out"}, planner{"proposed"}, format_spec;
  std::vector<std::string> planners;
  double dt_override = -1.0;
  int smoothing_window = 1;
  bool seedless = true;

  auto add_common = [&](CLI::App * cmd, bool with_planner) {
    cmd->add_option("--out", out_dir, "output directory")->capture_default_str();
    cmd->add_option("--format", format_spec, "comma list of csv,json,svg (default all)");
    cmd->add_option("--dt", dt_override, "override simulation step [s]")
      ->check(CLI::PositiveNumber);
    cmd->add_flag("--seedless", seedless,
                  "deterministic mode (default; reserved for future stochastic modes)");
    if (with_planner) {
      cmd->add_option("--planner", planner,
                      "proposed | quintic | double_quintic | bezier | bspline")
        ->capture_default_str();
    }
  };

  CLI::App * sim = app.add_subcommand("simulate", "run one scenario and export log/summary");
  sim->add_option("scenario", scenario, "scenario JSON path")->required();
  add_common(sim, true);

  CLI::App * plan = app.add_subcommand("plan", "plan a maneuver without rolling it out");
  plan->add_option("scenario", scenario, "scenario JSON path")->required();
  add_common(plan, true);

  CLI::App * cmp = app.add_subcommand("compare", "run several planners on one scenario");
  cmp->add_option("scenario", scenario, "scenario JSON path")->required();
  cmp->add_option("--planners", planners, "two or more planner names")
    ->required()
    ->delimiter(',');
  add_common(cmp, false);

  CLI::App * abl = app.add_subcommand("ablate", "run parameter variants of one scenario");
  abl->add_option("scenario", scenario, "scenario JSON path")->required();
  abl->add_option("variants", variants, "variants JSON path")->required();
  add_common(abl, true);

  CLI::App * replay = app.add_subcommand("replay-check", "validate a replay CSV file");
  replay->add_option("csv", scenario, "replay CSV path")->required();
  replay->add_option("--smoothing-window", smoothing_window, "moving-average width")
    ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    const OutputFormats formats = parse_formats(format_spec);
    if (sim->parsed()) {
      return cmd_simulate(scenario, planner, out_dir, formats, dt_override);
    }
    if (plan->parsed()) {
      return cmd_plan(scenario, planner, out_dir, formats, dt_override);
    }
    if (cmp->parsed()) {
      return cmd_compare(scenario, planners, out_dir, formats, dt_override);
    }
    if (abl->parsed()) {
      return cmd_ablate(scenario, variants, planner, out_dir, formats, dt_override);
    }
    if (replay->parsed()) {
      return cmd_replay_check(scenario, smoothing_window);
    }
  } catch (const ConfigError & e) {
    std::fprintf(stderr, "dqplan: %s\n", e.what());
    return kExitConfig;
  } catch (const ReplayError & e) {
    std::fprintf(stderr, "dqplan: %s\n", e.what());
    return kExitConfig;
  } catch (const std::domain_error & e) {
    // Contract violations surface from user-supplied values (overrides,
    // --dt): configuration problems, not crashes.
    std::fprintf(stderr, "dqplan: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception & e) {
    std::fprintf(stderr, "dqplan: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitConfig;
}
