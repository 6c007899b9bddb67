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

#ifndef DQPLAN_MANEUVER_HPP_
#define DQPLAN_MANEUVER_HPP_

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "dqplan/baseline_curves.hpp"
#include "dqplan/geometry.hpp"
#include "dqplan/quintic.hpp"

namespace dqplan {

/// Constant-lateral-level trajectory piece (e.g. keeping a lane). Exact
/// constants rather than degenerate quintics.
struct HoldSegment {
  double level{0.0};
  double t_start{0.0};
  double t_end{0.0};

  double eval(double /*t*/, int order = 0) const { return order == 0 ? level : 0.0; }
};

using TrajectoryPiece =
  std::variant<QuinticSegment, HoldSegment, BezierQuinticSegment, BSplineSegment>;

/// The switching state of a double quintic: the time and lateral kinematic
/// state shared by both segments. These are the free planning variables.
struct JunctionState {
  double t_s{0.0};
  double y_s{0.0};
  double v_s{0.0};
  double a_s{0.0};
};

/// Piecewise lateral trajectory riding on a constant longitudinal speed
/// (x(t) = speed * t). Pieces tile [start_time, end_time] without gaps and
/// are C2 across joints by construction of the builders.
class ManeuverPlan {
 public:
  ManeuverPlan(std::vector<TrajectoryPiece> pieces, double speed);

  double speed() const { return speed_; }
  double start_time() const { return start_time_; }
  double end_time() const { return end_time_; }
  double total_horizon() const { return end_time_ - start_time_; }
  const std::vector<TrajectoryPiece> & pieces() const { return pieces_; }

  // Lateral value/derivative at time t within [start_time, end_time]
  // (1e-9 slack); outside -> std::domain_error.
  double lateral(double t, int order = 0) const;

  // Full planar kinematic state; x = speed * t.
  PathSample state(double t) const;

  // Fill y/vy/ay/jy (any may be null) at t0 + k*dt, k = 0..n-1, using the
  // fast kernels for quintic and hold pieces.
  void sample(double t0, double dt, std::size_t n, double * y, double * vy, double * ay,
              double * jy) const;

 private:
  std::size_t piece_index(double t) const;

  std::vector<TrajectoryPiece> pieces_;
  std::vector<double> piece_ends_;
  double speed_;
  double start_time_;
  double end_time_;
};

/// Symmetric rest junction (T/2, dy/2, 0, 0): the closed-form default when
/// the optimizer is not engaged.
JunctionState symmetric_junction(double delta_y_total, double duration);

// All builders accept an optional horizon; when it exceeds the maneuver's
// terminal time the plan is padded with a constant hold at the final level.

ManeuverPlan single_lane_change(double delta_y, double duration, double speed,
                                double horizon = -1.0);

ManeuverPlan double_lane_change(double delta_y_total, const JunctionState & junction,
                                double duration, double speed, double horizon = -1.0);

// Piecewise overtaking profile: zero before t1, quintic 0->displacement on
// [t1, t2], hold on [t2, t3] (t2 == t3 allowed), quintic back to zero on
// [t3, t4], zero afterwards.
ManeuverPlan overtake(double displacement, double t1, double t2, double t3, double t4,
                      double speed, double horizon);

// Overtake-shaped swerve with a zero-length hold at the apex.
ManeuverPlan avoidance_swerve(double peak, int direction, double t_enter, double t_exit,
                              double speed, double horizon = -1.0);

/// General double quintic between arbitrary anchored states; used by the
/// optimizer and by replanning (which re-anchors at the current ego state).
/// junction.t_s must lie strictly inside (t0, t_end).
ManeuverPlan double_quintic_between(double t0, double y0, double v0, double a0,
                                    const JunctionState & junction, double t_end,
                                    double y_end, double speed, double horizon = -1.0);

enum class ManeuverKind { kLaneChange, kConsecutive, kOvertake, kAvoidance };

/// Declarative maneuver description as it appears in scenario files.
struct ManeuverSpec {
  ManeuverKind kind{ManeuverKind::kLaneChange};

  // lane_change / consecutive
  double delta_y{3.5};       // total lateral displacement
  double duration{5.0};      // lane_change maneuver time
  double leg_duration{3.0};  // consecutive: per-phase time (total = 2x)
  double t_start{0.0};       // hold the origin lane until then (ramp timing variants)
  std::optional<JunctionState> junction;  // consecutive: explicit switch state

  // overtake (switch instants)
  double displacement{3.5};
  double t1{1.0}, t2{4.0}, t3{8.0}, t4{11.0};

  // avoidance
  double peak{0.0};
  int direction{1};
  double t_enter{0.0}, t_exit{1.0};

  double total_duration() const;  // terminal time of the lateral maneuver
};

/// The closed-form plan for a maneuver spec: double quintic at the symmetric
/// rest junction for (consecutive) lane changes, rest-to-rest legs for
/// overtakes and swerves.
ManeuverPlan closed_form_plan(const ManeuverSpec & spec, double speed, double horizon);

}  // namespace dqplan

#endif  // DQPLAN_MANEUVER_HPP_
