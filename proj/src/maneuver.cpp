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

#include "dqplan/maneuver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dqplan/kernels.hpp"

namespace dqplan {
namespace {

double piece_start(const TrajectoryPiece & p)
{
  return std::visit(
    [](const auto & seg) {
      using T = std::decay_t<decltype(seg)>;
      if constexpr (std::is_same_v<T, QuinticSegment> || std::is_same_v<T, HoldSegment>) {
        return seg.t_start;
      } else {
        return seg.t_start();
      }
    },
    p);
}

double piece_end(const TrajectoryPiece & p)
{
  return std::visit(
    [](const auto & seg) {
      using T = std::decay_t<decltype(seg)>;
      if constexpr (std::is_same_v<T, QuinticSegment> || std::is_same_v<T, HoldSegment>) {
        return seg.t_end;
      } else {
        return seg.t_end();
      }
    },
    p);
}

void append_hold(std::vector<TrajectoryPiece> & pieces, double level, double t0, double t1)
{
  if (t1 > t0 + 1e-12) {
    pieces.push_back(HoldSegment{level, t0, t1});
  }
}

}  // namespace

ManeuverPlan::ManeuverPlan(std::vector<TrajectoryPiece> pieces, double speed)
: pieces_(std::move(pieces)), speed_(speed)
{
  if (pieces_.empty()) {
    throw std::domain_error("ManeuverPlan: at least one piece required");
  }
  if (!(speed_ > 0.0)) {
    throw std::domain_error("ManeuverPlan: speed must be positive");
  }
  start_time_ = piece_start(pieces_.front());
  end_time_ = piece_end(pieces_.back());
  double cursor = start_time_;
  constexpr double kTileTol = 1e-9;
  for (const auto & p : pieces_) {
    if (std::fabs(piece_start(p) - cursor) > kTileTol) {
      throw std::domain_error("ManeuverPlan: pieces must tile the horizon without gaps");
    }
    cursor = piece_end(p);
    if (!(cursor > piece_start(p))) {
      throw std::domain_error("ManeuverPlan: pieces must have positive length");
    }
    piece_ends_.push_back(cursor);
  }
}

std::size_t ManeuverPlan::piece_index(double t) const
{
  const double slack = 1e-9 * std::max(1.0, total_horizon());
  if (t < start_time_ - slack || t > end_time_ + slack) {
    throw std::domain_error("ManeuverPlan: time outside plan horizon");
  }
  const auto it = std::lower_bound(piece_ends_.begin(), piece_ends_.end(), t);
  const std::size_t idx = static_cast<std::size_t>(it - piece_ends_.begin());
  return std::min(idx, pieces_.size() - 1);
}

double ManeuverPlan::lateral(double t, int order) const
{
  const auto & piece = pieces_[piece_index(t)];
  return std::visit([&](const auto & seg) { return seg.eval(t, order); }, piece);
}

PathSample ManeuverPlan::state(double t) const
{
  PathSample s;
  s.x = speed_ * t;
  s.vx = speed_;
  s.y = lateral(t, 0);
  s.vy = lateral(t, 1);
  return s;
}

void ManeuverPlan::sample(double t0, double dt, std::size_t n, double * y, double * vy,
                          double * ay, double * jy) const
{
  const auto & ops = kernels::active();
  std::size_t k = 0;
  while (k < n) {
    const double t = t0 + static_cast<double>(k) * dt;
    const std::size_t idx = piece_index(t);
    const double end = piece_ends_[idx];
    // Samples covered by this piece (last piece takes everything left).
    std::size_t count = n - k;
    if (idx + 1 < pieces_.size()) {
      const auto covered = static_cast<std::size_t>(
        std::max(0.0, std::floor((end - t0) / dt - static_cast<double>(k) + 1e-9)) + 1.0);
      count = std::min(count, std::max<std::size_t>(1, covered));
    }
    const auto & piece = pieces_[idx];
    if (const auto * q = std::get_if<QuinticSegment>(&piece)) {
      ops.quintic_sample(q->coeffs.data(), t - q->t_start, dt, count, y ? y + k : nullptr,
                         vy ? vy + k : nullptr, ay ? ay + k : nullptr, jy ? jy + k : nullptr);
    } else if (const auto * h = std::get_if<HoldSegment>(&piece)) {
      for (std::size_t i = 0; i < count; ++i) {
        if (y) y[k + i] = h->level;
        if (vy) vy[k + i] = 0.0;
        if (ay) ay[k + i] = 0.0;
        if (jy) jy[k + i] = 0.0;
      }
    } else {
      for (std::size_t i = 0; i < count; ++i) {
        const double ti = t + static_cast<double>(i) * dt;
        if (y) y[k + i] = lateral(ti, 0);
        if (vy) vy[k + i] = lateral(ti, 1);
        if (ay) ay[k + i] = lateral(ti, 2);
        if (jy) jy[k + i] = lateral(ti, 3);
      }
    }
    k += count;
  }
}

JunctionState symmetric_junction(double delta_y_total, double duration)
{
  return {0.5 * duration, 0.5 * delta_y_total, 0.0, 0.0};
}

ManeuverPlan single_lane_change(double delta_y, double duration, double speed, double horizon)
{
  BoundaryConditions bc;
  bc.yT = delta_y;
  std::vector<TrajectoryPiece> pieces;
  pieces.push_back(solve_boundary(bc, duration, 0.0));
  if (horizon > duration) {
    append_hold(pieces, delta_y, duration, horizon);
  }
  return ManeuverPlan(std::move(pieces), speed);
}

ManeuverPlan double_quintic_between(double t0, double y0, double v0, double a0,
                                    const JunctionState & junction, double t_end,
                                    double y_end, double speed, double horizon)
{
  if (!(junction.t_s > t0) || !(junction.t_s < t_end)) {
    throw std::domain_error("double quintic: switching time must lie inside the window");
  }
  BoundaryConditions first{y0, junction.y_s, v0, junction.v_s, a0, junction.a_s};
  BoundaryConditions second{junction.y_s, y_end, junction.v_s, 0.0, junction.a_s, 0.0};
  std::vector<TrajectoryPiece> pieces;
  pieces.push_back(solve_boundary(first, junction.t_s - t0, t0));
  pieces.push_back(solve_boundary(second, t_end - junction.t_s, junction.t_s));
  if (horizon > t_end) {
    append_hold(pieces, y_end, t_end, horizon);
  }
  return ManeuverPlan(std::move(pieces), speed);
}

ManeuverPlan double_lane_change(double delta_y_total, const JunctionState & junction,
                                double duration, double speed, double horizon)
{
  return double_quintic_between(0.0, 0.0, 0.0, 0.0, junction, duration, delta_y_total, speed,
                                horizon);
}

ManeuverPlan overtake(double displacement, double t1, double t2, double t3, double t4,
                      double speed, double horizon)
{
  if (!(t1 >= 0.0) || !(t1 < t2) || !(t2 <= t3) || !(t3 < t4)) {
    throw std::domain_error("overtake: require 0 <= t1 < t2 <= t3 < t4");
  }
  if (horizon < t4) {
    throw std::domain_error("overtake: horizon must cover t4");
  }
  std::vector<TrajectoryPiece> pieces;
  append_hold(pieces, 0.0, 0.0, t1);
  BoundaryConditions out;
  out.yT = displacement;
  pieces.push_back(solve_boundary(out, t2 - t1, t1));
  append_hold(pieces, displacement, t2, t3);
  BoundaryConditions back;
  back.y0 = displacement;
  pieces.push_back(solve_boundary(back, t4 - t3, t3));
  append_hold(pieces, 0.0, t4, horizon);
  return ManeuverPlan(std::move(pieces), speed);
}

ManeuverPlan avoidance_swerve(double peak, int direction, double t_enter, double t_exit,
                              double speed, double horizon)
{
  if (!(peak >= 0.0)) {
    throw std::domain_error("avoidance_swerve: peak must be non-negative");
  }
  if (direction != 1 && direction != -1) {
    throw std::domain_error("avoidance_swerve: direction must be +1 or -1");
  }
  const double mid = 0.5 * (t_enter + t_exit);
  const double end = horizon > t_exit ? horizon : t_exit;
  return overtake(static_cast<double>(direction) * peak, t_enter, mid, mid, t_exit, speed, end);
}

double ManeuverSpec::total_duration() const
{
  switch (kind) {
    case ManeuverKind::kLaneChange:
      return t_start + duration;
    case ManeuverKind::kConsecutive:
      return t_start + 2.0 * leg_duration;
    case ManeuverKind::kOvertake:
      return t4;
    case ManeuverKind::kAvoidance:
      return t_exit;
  }
  return duration;
}

namespace {

ManeuverPlan lane_like_closed_form(double delta_y, const JunctionState & junction,
                                   double t_start, double t_end, double speed, double horizon)
{
  ManeuverPlan moving =
    double_quintic_between(t_start, 0.0, 0.0, 0.0, junction, t_end, delta_y, speed, horizon);
  if (t_start <= 0.0) {
    return moving;
  }
  std::vector<TrajectoryPiece> pieces{HoldSegment{0.0, 0.0, t_start}};
  for (const auto & p : moving.pieces()) {
    pieces.push_back(p);
  }
  return ManeuverPlan(std::move(pieces), speed);
}

}  // namespace

ManeuverPlan closed_form_plan(const ManeuverSpec & spec, double speed, double horizon)
{
  switch (spec.kind) {
    case ManeuverKind::kLaneChange: {
      JunctionState j = symmetric_junction(spec.delta_y, spec.duration);
      j.t_s += spec.t_start;
      return lane_like_closed_form(spec.delta_y, j, spec.t_start,
                                   spec.t_start + spec.duration, speed, horizon);
    }
    case ManeuverKind::kConsecutive: {
      const double total = 2.0 * spec.leg_duration;
      JunctionState j = spec.junction.value_or(symmetric_junction(spec.delta_y, total));
      if (!spec.junction.has_value()) {
        j.t_s += spec.t_start;
      }
      return lane_like_closed_form(spec.delta_y, j, spec.t_start, spec.t_start + total,
                                   speed, horizon);
    }
    case ManeuverKind::kOvertake:
      return overtake(spec.displacement, spec.t1, spec.t2, spec.t3, spec.t4, speed, horizon);
    case ManeuverKind::kAvoidance:
      return avoidance_swerve(spec.peak, spec.direction, spec.t_enter, spec.t_exit, speed,
                              horizon);
  }
  throw std::domain_error("closed_form_plan: unknown maneuver kind");
}

}  // namespace dqplan
