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

#ifndef DQPLAN_OPTIMIZER_HPP_
#define DQPLAN_OPTIMIZER_HPP_

#include <optional>
#include <span>
#include <vector>

#include "dqplan/cost.hpp"
#include "dqplan/maneuver.hpp"
#include "dqplan/safety.hpp"
#include "dqplan/traffic.hpp"

namespace dqplan {

struct OptimizerConfig {
  int max_iters{50};
  double tol_cost{1e-6};   // relative cost-decrease tolerance
  double tol_step{1e-8};   // scaled parameter-step tolerance
  double ls_shrink{0.5};
  double ls_sufficient_decrease{1e-4};
  bool single_quintic{false};   // closed-form single segment, no junction DOF
  bool optimize_duration{false};  // add maneuver time T as a free variable

  void validate() const;
};

/// Everything one optimize call needs: the maneuver to shape, the traffic to
/// shape it against, and the anchoring state (t0 > 0 for replans).
struct PlanningProblem {
  ManeuverSpec maneuver;
  double speed{15.0};
  double horizon{12.0};
  double dt{0.05};
  std::vector<ObstacleTrack> tracks;
  SafetyParams safety;
  CostWeights weights;
  ActuationLimits limits;

  // Anchor state; replans re-anchor at the live ego state.
  double t0{0.0};
  double y0{0.0};
  double v0{0.0};
  double a0{0.0};
};

struct OptimizeReport {
  int iterations{0};
  std::vector<double> cost_history;  // length iterations + 1, non-increasing
  bool converged{false};
  std::vector<double> final_params;
  CostBreakdown final_breakdown;
  std::optional<ManeuverPlan> final_plan;
  int best_seed{0};
};

/// Minimize the total cost over the free maneuver parameters (junction
/// state(s), optionally the duration) with endpoint conditions built into
/// the parameterization. Projected gradient descent with a backtracking line
/// search, five deterministic starts, best run reported.
OptimizeReport optimize_maneuver(const PlanningProblem & problem,
                                 const OptimizerConfig & config);

struct Verdict {
  bool risky{false};
  double min_ttc{kInfiniteTtc};
  double min_gap{kInfiniteTtc};
  std::optional<ManeuverPlan> replacement;
  std::optional<OptimizeReport> report;
};

/// Minimum sampled TTC and gap of a plan against tracks from `from_t` to the
/// plan end.
std::pair<double, double> min_ttc_and_gap(const ManeuverPlan & plan,
                                          std::span<const ObstacleTrack> tracks,
                                          double from_t, double dt);

/// Risky iff sampled min TTC < t_safe (strict; the boundary is safe) or
/// sampled min gap < safe_distance. Risky verdicts carry an optimized
/// replacement plan anchored at the problem's anchor state.
Verdict classify_and_replan(const ManeuverPlan & plan, std::span<const ObstacleTrack> tracks,
                            const SafetyParams & safety, const PlanningProblem & problem,
                            const OptimizerConfig & config);

}  // namespace dqplan

#endif  // DQPLAN_OPTIMIZER_HPP_
