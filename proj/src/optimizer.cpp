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

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dqplan {
namespace {

constexpr double kMinWindow = 0.5;  // [s] below this a replan has no room to act

struct Parameterization {
  ParamBox box;
  std::vector<double> init;
  PlanBuilder build;
  int ts_index{-1};      // scaled +-0.15 seed perturbation target
  int ys_index{-1};
  double ys_span{0.0};   // natural-unit magnitude for the y_s perturbation
};

struct LegWindow {
  double t_begin, t_end;
  double y_from, y_to;
};

void junction_box(const LegWindow & leg, ParamBox & box, std::vector<double> & init)
{
  const double window = leg.t_end - leg.t_begin;
  const double span = std::max(std::fabs(leg.y_to - leg.y_from), 1.0);
  const double y_lo = std::min(leg.y_from, leg.y_to) - 0.25 * span;
  const double y_hi = std::max(leg.y_from, leg.y_to) + 0.25 * span;
  const double v_max = 3.0 * span / window;
  const double a_max = 10.0 * span / (window * window);

  box.lower.insert(box.lower.end(),
                   {leg.t_begin + 0.05 * window, y_lo, -v_max, -a_max});
  box.upper.insert(box.upper.end(),
                   {leg.t_begin + 0.95 * window, y_hi, v_max, a_max});
  init.insert(init.end(),
              {leg.t_begin + 0.5 * window, 0.5 * (leg.y_from + leg.y_to), 0.0, 0.0});
}

JunctionState junction_from(std::span<const double> p, std::size_t at)
{
  return {p[at], p[at + 1], p[at + 2], p[at + 3]};
}

// Overtake phases with the anchor applied; legs already begun are shortened
// and anchored at the live state, finished legs drop out.
struct OvertakePhases {
  bool leg1{false}, leg2{false};
  bool leg1_anchored{false}, leg2_anchored{false};  // replan landed inside the leg
  LegWindow w1{}, w2{};
  double displacement{0.0};
};

OvertakePhases overtake_phases(const ManeuverSpec & spec, double t0, double y0)
{
  OvertakePhases ph;
  double t1 = spec.t1, t2 = spec.t2, t3 = spec.t3, t4 = spec.t4;
  double displacement = spec.displacement;
  if (spec.kind == ManeuverKind::kAvoidance) {
    t1 = spec.t_enter;
    t4 = spec.t_exit;
    t2 = t3 = 0.5 * (t1 + t4);
    displacement = static_cast<double>(spec.direction) * spec.peak;
  }
  ph.displacement = displacement;
  if (t0 < t2 - kMinWindow) {
    ph.leg1 = true;
    ph.leg1_anchored = t0 > t1;
    ph.w1 = {std::max(t0, t1), t2, ph.leg1_anchored ? y0 : 0.0, displacement};
  }
  if (t0 < t4 - kMinWindow) {
    ph.leg2 = true;
    ph.leg2_anchored = t0 > t3;
    ph.w2 = {std::max(t0, t3), t4, ph.leg2_anchored ? y0 : displacement, 0.0};
  }
  return ph;
}

ManeuverPlan anchored_closed_form(const PlanningProblem & pb)
{
  const ManeuverSpec & spec = pb.maneuver;
  if (pb.t0 <= 0.0) {
    return closed_form_plan(spec, pb.speed, pb.horizon);
  }
  switch (spec.kind) {
    case ManeuverKind::kLaneChange:
    case ManeuverKind::kConsecutive: {
      const double te = spec.total_duration();
      if (pb.t0 >= te - kMinWindow) {
        // Maneuver effectively finished: hold the target.
        std::vector<TrajectoryPiece> pieces{HoldSegment{spec.delta_y, pb.t0, pb.horizon}};
        return ManeuverPlan(std::move(pieces), pb.speed);
      }
      const double begin = std::max(pb.t0, spec.t_start);
      const bool mid = pb.t0 > spec.t_start;
      const double y0 = mid ? pb.y0 : 0.0;
      JunctionState j{0.5 * (begin + te), 0.5 * (y0 + spec.delta_y), 0.0, 0.0};
      ManeuverPlan moving = double_quintic_between(begin, y0, mid ? pb.v0 : 0.0,
                                                   mid ? pb.a0 : 0.0, j, te, spec.delta_y,
                                                   pb.speed, pb.horizon);
      if (begin <= pb.t0 + 1e-12) {
        return moving;
      }
      std::vector<TrajectoryPiece> pieces{HoldSegment{0.0, pb.t0, begin}};
      for (const auto & piece : moving.pieces()) {
        pieces.push_back(piece);
      }
      return ManeuverPlan(std::move(pieces), pb.speed);
    }
    case ManeuverKind::kOvertake:
    case ManeuverKind::kAvoidance: {
      const OvertakePhases ph = overtake_phases(spec, pb.t0, pb.y0);
      std::vector<TrajectoryPiece> pieces;
      double cursor = pb.t0;
      auto leg = [&](const LegWindow & w, double y_from_state, double v0, double a0) {
        JunctionState j{0.5 * (w.t_begin + w.t_end), 0.5 * (y_from_state + w.y_to), 0.0, 0.0};
        const ManeuverPlan sub = double_quintic_between(w.t_begin, y_from_state, v0, a0, j,
                                                        w.t_end, w.y_to, pb.speed, -1.0);
        for (const auto & p : sub.pieces()) {
          pieces.push_back(p);
        }
      };
      if (ph.leg1) {
        if (ph.w1.t_begin > cursor + 1e-12) {
          pieces.push_back(HoldSegment{0.0, cursor, ph.w1.t_begin});
        }
        leg(ph.w1, ph.w1.y_from, ph.leg1_anchored ? pb.v0 : 0.0,
            ph.leg1_anchored ? pb.a0 : 0.0);
        cursor = ph.w1.t_end;
      }
      if (ph.leg2) {
        if (ph.w2.t_begin > cursor + 1e-12) {
          pieces.push_back(HoldSegment{ph.displacement, cursor, ph.w2.t_begin});
        }
        leg(ph.w2, ph.w2.y_from, ph.leg2_anchored ? pb.v0 : 0.0,
            ph.leg2_anchored ? pb.a0 : 0.0);
        cursor = ph.w2.t_end;
      } else if (!ph.leg1) {
        // Past the maneuver: hold the current level.
        pieces.push_back(HoldSegment{pb.y0, cursor, pb.horizon});
        return ManeuverPlan(std::move(pieces), pb.speed);
      }
      if (pb.horizon > cursor + 1e-12) {
        pieces.push_back(HoldSegment{0.0, cursor, pb.horizon});
      }
      return ManeuverPlan(std::move(pieces), pb.speed);
    }
  }
  throw std::domain_error("anchored_closed_form: unknown maneuver kind");
}

std::optional<Parameterization> make_parameterization(const PlanningProblem & pb,
                                                      const OptimizerConfig & cfg)
{
  const ManeuverSpec & spec = pb.maneuver;
  Parameterization prm;

  const bool lane_like = spec.kind == ManeuverKind::kLaneChange ||
                         spec.kind == ManeuverKind::kConsecutive;
  if (cfg.single_quintic && lane_like) {
    if (!cfg.optimize_duration) {
      return std::nullopt;  // single-quintic mode has no free variables
    }
    const double begin = std::max(pb.t0, spec.t_start);
    const double T0 = spec.total_duration() - begin;
    if (T0 < kMinWindow) {
      return std::nullopt;
    }
    const bool mid = pb.t0 > spec.t_start;
    const double t_anchor = pb.t0;
    const double y0 = mid ? pb.y0 : 0.0;
    const double v0 = mid ? pb.v0 : 0.0;
    const double a0 = mid ? pb.a0 : 0.0;
    const double target = spec.delta_y;
    const double speed = pb.speed, horizon = pb.horizon;
    prm.box.lower = {0.5 * T0};
    prm.box.upper = {std::min(1.5 * T0, horizon - begin - 0.01)};
    prm.init = {std::min(T0, prm.box.upper[0])};
    prm.build = [=](std::span<const double> p) {
      BoundaryConditions bc{y0, target, v0, 0.0, a0, 0.0};
      std::vector<TrajectoryPiece> pieces;
      if (begin > t_anchor + 1e-12) {
        pieces.push_back(HoldSegment{0.0, t_anchor, begin});
      }
      pieces.push_back(solve_boundary(bc, p[0], begin));
      if (horizon > begin + p[0]) {
        pieces.push_back(HoldSegment{target, begin + p[0], horizon});
      }
      return ManeuverPlan(std::move(pieces), speed);
    };
    return prm;
  }

  if (lane_like) {
    const double te = spec.total_duration();
    const double begin = std::max(pb.t0, spec.t_start);
    if (te - begin < kMinWindow || pb.t0 >= te - kMinWindow) {
      return std::nullopt;
    }
    const double t_anchor = pb.t0;
    const bool mid = pb.t0 > spec.t_start;
    const double y0 = mid ? pb.y0 : 0.0;
    const double v0 = mid ? pb.v0 : 0.0;
    const double a0 = mid ? pb.a0 : 0.0;
    const double target = spec.delta_y;
    const double speed = pb.speed, horizon = pb.horizon;

    auto assemble = [=](ManeuverPlan moving) {
      if (begin <= t_anchor + 1e-12) {
        return moving;
      }
      std::vector<TrajectoryPiece> pieces{HoldSegment{0.0, t_anchor, begin}};
      for (const auto & piece : moving.pieces()) {
        pieces.push_back(piece);
      }
      return ManeuverPlan(std::move(pieces), speed);
    };

    if (cfg.optimize_duration) {
      // Params: [theta, y_s, v_s, a_s, T]; t_s = begin + theta*T.
      const double T0 = te - begin;
      const double span = std::max(std::fabs(target - y0), 1.0);
      const double T_hi = std::min(1.5 * T0, horizon - begin - 0.01);
      const double v_max = 3.0 * span / T0;
      const double a_max = 10.0 * span / (T0 * T0);
      prm.box.lower = {0.05, std::min(y0, target) - 0.25 * span, -v_max, -a_max, 0.5 * T0};
      prm.box.upper = {0.95, std::max(y0, target) + 0.25 * span, v_max, a_max, T_hi};
      prm.init = {0.5, 0.5 * (y0 + target), 0.0, 0.0, std::min(T0, T_hi)};
      prm.ts_index = 0;
      prm.ys_index = 1;
      prm.ys_span = span;
      prm.build = [=](std::span<const double> p) {
        const double T = p[4];
        JunctionState j{begin + p[0] * T, p[1], p[2], p[3]};
        return assemble(
          double_quintic_between(begin, y0, v0, a0, j, begin + T, target, speed, horizon));
      };
      return prm;
    }
    junction_box({begin, te, y0, target}, prm.box, prm.init);
    // Honor an explicit configured junction as the central seed.
    if (spec.junction && pb.t0 <= 0.0) {
      prm.init = {spec.junction->t_s, spec.junction->y_s, spec.junction->v_s,
                  spec.junction->a_s};
    }
    prm.ts_index = 0;
    prm.ys_index = 1;
    prm.ys_span = std::max(std::fabs(target - y0), 1.0);
    prm.build = [=](std::span<const double> p) {
      return assemble(double_quintic_between(begin, y0, v0, a0, junction_from(p, 0), te,
                                             target, speed, horizon));
    };
    return prm;
  }

  // Overtake / avoidance: one junction per remaining leg.
  const OvertakePhases ph = overtake_phases(spec, pb.t0, pb.y0);
  if (!ph.leg1 && !ph.leg2) {
    return std::nullopt;
  }
  const double t_anchor = pb.t0;
  const double v0 = pb.v0, a0 = pb.a0;
  const double speed = pb.speed, horizon = pb.horizon;
  const double displacement = ph.displacement;
  if (ph.leg1) {
    junction_box(ph.w1, prm.box, prm.init);
    prm.ts_index = 0;
    prm.ys_index = 1;
    prm.ys_span = std::max(std::fabs(ph.w1.y_to - ph.w1.y_from), 1.0);
  }
  if (ph.leg2) {
    junction_box(ph.w2, prm.box, prm.init);
    if (!ph.leg1) {
      prm.ts_index = 0;
      prm.ys_index = 1;
      prm.ys_span = std::max(std::fabs(ph.w2.y_to - ph.w2.y_from), 1.0);
    }
  }
  prm.build = [=](std::span<const double> p) {
    std::vector<TrajectoryPiece> pieces;
    double cursor = t_anchor;
    std::size_t at = 0;
    if (ph.leg1) {
      if (ph.w1.t_begin > cursor + 1e-12) {
        pieces.push_back(HoldSegment{ph.w1.y_from, cursor, ph.w1.t_begin});
      }
      const ManeuverPlan sub = double_quintic_between(
        ph.w1.t_begin, ph.w1.y_from, ph.leg1_anchored ? v0 : 0.0,
        ph.leg1_anchored ? a0 : 0.0, junction_from(p, at), ph.w1.t_end, ph.w1.y_to, speed,
        -1.0);
      for (const auto & piece : sub.pieces()) pieces.push_back(piece);
      cursor = ph.w1.t_end;
      at += 4;
    }
    if (ph.leg2) {
      if (ph.w2.t_begin > cursor + 1e-12) {
        pieces.push_back(HoldSegment{displacement, cursor, ph.w2.t_begin});
      }
      const ManeuverPlan sub = double_quintic_between(
        ph.w2.t_begin, ph.w2.y_from, ph.leg2_anchored ? v0 : 0.0,
        ph.leg2_anchored ? a0 : 0.0, junction_from(p, at), ph.w2.t_end, ph.w2.y_to, speed,
        -1.0);
      for (const auto & piece : sub.pieces()) pieces.push_back(piece);
      cursor = ph.w2.t_end;
    }
    if (horizon > cursor + 1e-12) {
      pieces.push_back(HoldSegment{ph.leg2 ? 0.0 : displacement, cursor, horizon});
    }
    return ManeuverPlan(std::move(pieces), speed);
  };
  return prm;
}

struct SolveRun {
  std::vector<double> x;  // natural units
  double f{0.0};
  std::vector<double> history;
  bool converged{false};
  int iterations{0};
};

SolveRun solve_projected_gradient(const Parameterization & prm, CostEvaluator & eval,
                                  std::span<const double> seed, const OptimizerConfig & cfg)
{
  const std::size_t dim = prm.box.size();
  std::vector<double> widths(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    widths[i] = std::max(prm.box.width(i), 1e-12);
  }
  auto to_scaled = [&](std::span<const double> p) {
    std::vector<double> s(dim);
    for (std::size_t i = 0; i < dim; ++i) s[i] = (p[i] - prm.box.lower[i]) / widths[i];
    return s;
  };
  auto to_natural = [&](std::span<const double> s) {
    std::vector<double> p(dim);
    for (std::size_t i = 0; i < dim; ++i) p[i] = prm.box.lower[i] + s[i] * widths[i];
    return p;
  };
  auto project = [](std::vector<double> s) {
    for (double & v : s) v = std::clamp(v, 0.0, 1.0);
    return s;
  };
  auto scaled_gradient = [&](std::span<const double> s) {
    const std::vector<double> p = to_natural(s);
    std::vector<double> g = cost_gradient(prm.build, prm.box, eval, p);
    for (std::size_t i = 0; i < dim; ++i) g[i] *= widths[i];
    return g;
  };

  SolveRun run;
  std::vector<double> x = project(to_scaled(prm.box.clamp(seed)));
  double f = eval.evaluate(prm.build(to_natural(x))).total;
  if (!std::isfinite(f)) {
    throw std::domain_error("optimize: non-finite cost at initialization");
  }
  run.history.push_back(f);

  std::vector<double> g = scaled_gradient(x);
  double alpha = 0.25;
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    // Backtracking projected step with sufficient decrease along the arc.
    double step_alpha = std::clamp(alpha, 1e-6, 4.0);
    std::vector<double> x_new;
    double f_new = f;
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      std::vector<double> cand(dim);
      for (std::size_t i = 0; i < dim; ++i) cand[i] = x[i] - step_alpha * g[i];
      cand = project(std::move(cand));
      double sq = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        const double d = cand[i] - x[i];
        sq += d * d;
      }
      if (sq == 0.0) {
        break;  // projection did not move: stationary on the box
      }
      const double trial = eval.evaluate(prm.build(to_natural(cand))).total;
      if (trial <= f - cfg.ls_sufficient_decrease * sq / step_alpha) {
        x_new = std::move(cand);
        f_new = trial;
        accepted = true;
        break;
      }
      step_alpha *= cfg.ls_shrink;
    }
    if (!accepted) {
      run.converged = true;  // no descent step: at a (box-)stationary point
      break;
    }

    double step_norm = 0.0;
    std::vector<double> s_vec(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      s_vec[i] = x_new[i] - x[i];
      step_norm += s_vec[i] * s_vec[i];
    }
    step_norm = std::sqrt(step_norm);
    const double rel_decrease = (f - f_new) / std::max(1.0, std::fabs(f));

    x = std::move(x_new);
    f = f_new;
    run.history.push_back(f);
    ++run.iterations;

    const std::vector<double> g_new = scaled_gradient(x);
    // Barzilai-Borwein step proposal, safeguarded; backtracking keeps the
    // iteration monotone regardless.
    double sy = 0.0, ss = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      sy += s_vec[i] * (g_new[i] - g[i]);
      ss += s_vec[i] * s_vec[i];
    }
    alpha = (sy > 1e-16) ? std::clamp(ss / sy, 1e-4, 4.0) : std::min(2.0 * step_alpha, 4.0);
    g = g_new;

    if (rel_decrease < cfg.tol_cost || step_norm < cfg.tol_step) {
      run.converged = true;
      break;
    }
  }
  run.x = to_natural(x);
  run.f = f;
  return run;
}

}  // namespace

void OptimizerConfig::validate() const
{
  if (max_iters < 1) {
    throw std::domain_error("OptimizerConfig: max_iters must be >= 1");
  }
  if (!(tol_cost > 0.0) || !(tol_step > 0.0)) {
    throw std::domain_error("OptimizerConfig: tolerances must be positive");
  }
  if (!(ls_shrink > 0.0) || !(ls_shrink < 1.0) || !(ls_sufficient_decrease > 0.0)) {
    throw std::domain_error("OptimizerConfig: invalid line-search parameters");
  }
}

OptimizeReport optimize_maneuver(const PlanningProblem & problem, const OptimizerConfig & config)
{
  config.validate();
  problem.safety.validate();
  problem.weights.validate();
  problem.limits.validate();

  OptimizeReport report;
  const auto prm = make_parameterization(problem, config);
  CostEvaluator evaluator(problem.tracks, problem.safety, problem.weights, problem.limits,
                          problem.t0, problem.horizon, problem.dt);

  if (!prm.has_value()) {
    ManeuverPlan plan = anchored_closed_form(problem);
    report.final_breakdown = evaluator.evaluate(plan);
    report.cost_history = {report.final_breakdown.total};
    report.converged = true;
    report.final_plan = std::move(plan);
    return report;
  }

  // Deterministic multistart: the closed-form seed plus four perturbations.
  std::vector<std::vector<double>> seeds;
  seeds.push_back(prm->init);
  if (prm->ts_index >= 0) {
    const double dts = 0.15 * prm->box.width(static_cast<std::size_t>(prm->ts_index));
    for (const double sign : {+1.0, -1.0}) {
      auto s = prm->init;
      s[static_cast<std::size_t>(prm->ts_index)] += sign * dts;
      seeds.push_back(std::move(s));
    }
  }
  if (prm->ys_index >= 0) {
    for (const double sign : {+1.0, -1.0}) {
      auto s = prm->init;
      s[static_cast<std::size_t>(prm->ys_index)] += sign * 0.15 * prm->ys_span;
      seeds.push_back(std::move(s));
    }
  }

  std::optional<SolveRun> best;
  int best_seed = 0;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    SolveRun run = solve_projected_gradient(*prm, evaluator, seeds[i], config);
    if (!best || run.f < best->f) {
      best = std::move(run);
      best_seed = static_cast<int>(i);
    }
  }

  report.iterations = best->iterations;
  report.cost_history = best->history;
  report.converged = best->converged;
  report.final_params = best->x;
  report.best_seed = best_seed;
  ManeuverPlan plan = prm->build(best->x);
  report.final_breakdown = evaluator.evaluate(plan);
  report.final_plan = std::move(plan);
  return report;
}

std::pair<double, double> min_ttc_and_gap(const ManeuverPlan & plan,
                                          std::span<const ObstacleTrack> tracks,
                                          double from_t, double dt)
{
  double min_ttc = kInfiniteTtc;
  double min_gap = kInfiniteTtc;
  const auto n =
    static_cast<std::size_t>(std::floor((plan.end_time() - from_t) / dt + 1e-9));
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = from_t + static_cast<double>(k) * dt;
    const PathSample ego = plan.state(t);
    for (const ObstacleTrack & track : tracks) {
      const TTCSample s = ttc(ego, track.state_at(t), t);
      min_ttc = std::min(min_ttc, s.ttc);
      min_gap = std::min(min_gap, s.gap);
    }
  }
  return {min_ttc, min_gap};
}

Verdict classify_and_replan(const ManeuverPlan & plan, std::span<const ObstacleTrack> tracks,
                            const SafetyParams & safety, const PlanningProblem & problem,
                            const OptimizerConfig & config)
{
  safety.validate();
  Verdict verdict;
  const auto [min_ttc, min_gap] = min_ttc_and_gap(plan, tracks, problem.t0, problem.dt);
  verdict.min_ttc = min_ttc;
  verdict.min_gap = min_gap;
  verdict.risky = (min_ttc < safety.t_safe) || (min_gap < safety.safe_distance);
  if (!verdict.risky || tracks.empty()) {
    return verdict;
  }
  OptimizeReport report = optimize_maneuver(problem, config);
  verdict.replacement = report.final_plan;
  verdict.report = std::move(report);
  return verdict;
}

}  // namespace dqplan
