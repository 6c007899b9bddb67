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

#ifndef DQPLAN_SAFETY_HPP_
#define DQPLAN_SAFETY_HPP_

#include <limits>
#include <span>
#include <vector>

#include "dqplan/geometry.hpp"
#include "dqplan/maneuver.hpp"
#include "dqplan/traffic.hpp"

namespace dqplan {

constexpr double kInfiniteTtc = std::numeric_limits<double>::infinity();

/// One time-to-collision evaluation. Closing speed is the rate of gap
/// decrease (line-of-sight projection of relative velocity), positive when
/// approaching; ttc is +inf when not closing and 0 at zero gap.
struct TTCSample {
  double t{0.0};
  double gap{0.0};
  double closing_speed{0.0};
  double ttc{kInfiniteTtc};
};

struct SafetyParams {
  double t_safe{3.0};                           // [s] TTC threshold activating the penalty
  double safe_distance{5.0};                    // [m] hard gap check in the simulator
  std::vector<double> ttc_thresholds{3.0, 2.0, 1.0};  // [s] reporting bins, descending
  bool normalized_penalty{true};                // deficit divided by t_safe before squaring

  void validate() const;
};

/// Euclidean center-to-center distance.
double gap(const PlanarPoint & ego, const PlanarPoint & obs);

TTCSample ttc(const PathSample & ego, const PathSample & obs, double t = 0.0);

/// Quadratic deficit penalty: 0 for ttc >= t_safe, else the squared deficit,
/// normalized by t_safe by default (raw form behind the flag).
double ttc_penalty(double ttc_value, double t_safe, bool normalized = true);

/// Discrete total TTC penalty over the plan horizon:
/// sum over obstacles and sample times t_k = k*dt (k = 1..N) of phi * dt.
double ttc_cost(const ManeuverPlan & plan, std::span<const ObstacleTrack> tracks,
                const SafetyParams & params, double dt);

}  // namespace dqplan

#endif  // DQPLAN_SAFETY_HPP_
