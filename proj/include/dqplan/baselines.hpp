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

#ifndef DQPLAN_BASELINES_HPP_
#define DQPLAN_BASELINES_HPP_

#include <string>

#include "dqplan/maneuver.hpp"

namespace dqplan {

/// Comparison planners. None of them sees the traffic: their safety and
/// comfort figures are computed post hoc by the metrics pipeline.
enum class BaselineKind { kClosedQuintic, kClosedDoubleQuintic, kBezier, kBSpline };

const char * to_string(BaselineKind kind);

/// A single rest-to-rest lateral transition of the given family.
/// All kinds meet the same endpoint conditions (position, velocity,
/// acceleration at rest on both ends).
TrajectoryPiece baseline_transition(BaselineKind kind, double delta_y, double duration,
                                    double t_start);

/// Single lane-change profile: the transition plus a trailing hold.
ManeuverPlan plan_baseline(BaselineKind kind, double delta_y, double duration, double speed,
                           double horizon = -1.0);

/// A full maneuver with every quintic leg replaced by the baseline family
/// (fair-comparison counterpart of the proposed planner's plans).
ManeuverPlan plan_baseline_maneuver(BaselineKind kind, const ManeuverSpec & spec, double speed,
                                    double horizon);

}  // namespace dqplan

#endif  // DQPLAN_BASELINES_HPP_
