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

#include "dqplan/baselines.hpp"

#include <stdexcept>

namespace dqplan {
namespace {

// One rest-to-rest transition from `y_from` to `y_to` over [t0, t1].
// ClosedDoubleQuintic splits at the symmetric rest junction; the others are
// single curves of their family.
void append_leg(std::vector<TrajectoryPiece> & pieces, BaselineKind kind, double y_from,
                double y_to, double t0, double t1)
{
  const double duration = t1 - t0;
  switch (kind) {
    case BaselineKind::kClosedQuintic: {
      BoundaryConditions bc{y_from, y_to, 0.0, 0.0, 0.0, 0.0};
      pieces.push_back(solve_boundary(bc, duration, t0));
      return;
    }
    case BaselineKind::kClosedDoubleQuintic: {
      const double mid_t = t0 + 0.5 * duration;
      const double mid_y = 0.5 * (y_from + y_to);
      BoundaryConditions first{y_from, mid_y, 0.0, 0.0, 0.0, 0.0};
      BoundaryConditions second{mid_y, y_to, 0.0, 0.0, 0.0, 0.0};
      pieces.push_back(solve_boundary(first, 0.5 * duration, t0));
      pieces.push_back(solve_boundary(second, 0.5 * duration, mid_t));
      return;
    }
    case BaselineKind::kBezier:
      pieces.push_back(BezierQuinticSegment(y_from, y_to, duration, t0));
      return;
    case BaselineKind::kBSpline:
      pieces.push_back(BSplineSegment(y_from, y_to, duration, t0));
      return;
  }
  throw std::domain_error("baseline leg: unknown kind");
}

}  // namespace

const char * to_string(BaselineKind kind)
{
  switch (kind) {
    case BaselineKind::kClosedQuintic:
      return "quintic";
    case BaselineKind::kClosedDoubleQuintic:
      return "double_quintic";
    case BaselineKind::kBezier:
      return "bezier";
    case BaselineKind::kBSpline:
      return "bspline";
  }
  return "unknown";
}

TrajectoryPiece baseline_transition(BaselineKind kind, double delta_y, double duration,
                                    double t_start)
{
  std::vector<TrajectoryPiece> pieces;
  append_leg(pieces, kind == BaselineKind::kClosedDoubleQuintic ? BaselineKind::kClosedQuintic
                                                                : kind,
             0.0, delta_y, t_start, t_start + duration);
  return pieces.front();
}

ManeuverPlan plan_baseline(BaselineKind kind, double delta_y, double duration, double speed,
                           double horizon)
{
  std::vector<TrajectoryPiece> pieces;
  append_leg(pieces, kind, 0.0, delta_y, 0.0, duration);
  if (horizon > duration) {
    pieces.push_back(HoldSegment{delta_y, duration, horizon});
  }
  return ManeuverPlan(std::move(pieces), speed);
}

ManeuverPlan plan_baseline_maneuver(BaselineKind kind, const ManeuverSpec & spec, double speed,
                                    double horizon)
{
  std::vector<TrajectoryPiece> pieces;
  switch (spec.kind) {
    case ManeuverKind::kLaneChange:
      return plan_baseline(kind, spec.delta_y, spec.duration, speed, horizon);
    case ManeuverKind::kConsecutive: {
      const double mid = 0.5 * spec.delta_y;
      const double total = 2.0 * spec.leg_duration;
      append_leg(pieces, kind, 0.0, mid, 0.0, spec.leg_duration);
      append_leg(pieces, kind, mid, spec.delta_y, spec.leg_duration, total);
      if (horizon > total) {
        pieces.push_back(HoldSegment{spec.delta_y, total, horizon});
      }
      return ManeuverPlan(std::move(pieces), speed);
    }
    case ManeuverKind::kOvertake:
    case ManeuverKind::kAvoidance: {
      double t1 = spec.t1, t2 = spec.t2, t3 = spec.t3, t4 = spec.t4;
      double displacement = spec.displacement;
      if (spec.kind == ManeuverKind::kAvoidance) {
        t1 = spec.t_enter;
        t4 = spec.t_exit;
        t2 = t3 = 0.5 * (t1 + t4);
        displacement = static_cast<double>(spec.direction) * spec.peak;
      }
      if (t1 > 0.0) {
        pieces.push_back(HoldSegment{0.0, 0.0, t1});
      }
      append_leg(pieces, kind, 0.0, displacement, t1, t2);
      if (t3 > t2) {
        pieces.push_back(HoldSegment{displacement, t2, t3});
      }
      append_leg(pieces, kind, displacement, 0.0, t3, t4);
      if (horizon > t4) {
        pieces.push_back(HoldSegment{0.0, t4, horizon});
      }
      return ManeuverPlan(std::move(pieces), speed);
    }
  }
  throw std::domain_error("plan_baseline_maneuver: unknown maneuver kind");
}

}  // namespace dqplan
