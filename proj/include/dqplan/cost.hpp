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

#ifndef DQPLAN_COST_HPP_
#define DQPLAN_COST_HPP_

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "dqplan/maneuver.hpp"
#include "dqplan/safety.hpp"
#include "dqplan/traffic.hpp"

namespace dqplan {

struct CostWeights {
  double lambda1{1.0};  // smoothness
  double lambda2{5.0};  // TTC penalty
  double lambda3{1.0};  // lateral acceleration bound
  double lambda4{1.0};  // lateral jerk bound
  double lambda5{1.0};  // curvature bound
  // Smoothness integrand: squared jerk by default; the acceleration form
  // (integral of ay^2) is available for parity with older setups.
  bool accel_smoothness{false};

  // Warns on stderr when lambda2/lambda1 leaves [0.01, 10] (conditioning);
  // throws on negative weights.
  void validate() const;
};

struct ActuationLimits {
  double a_y_max{3.0};     // [m/s^2]
  double j_y_max{5.0};     // [m/s^3]
  double delta_max{0.61};  // [rad] steering limit
  double wheelbase{2.8};   // [m]

  double kappa_max() const;
  void validate() const;
};

struct CostBreakdown {
  double smooth{0.0};
  double ttc{0.0};
  double bounds{0.0};  // already weight-scaled
  double total{0.0};   // lambda1*smooth + lambda2*ttc + bounds
};

/// Discrete jerk integral: sum over k >= 3 of (third difference)^2 / dt^5.
/// Converges to the continuous integral of jerk^2 as dt -> 0. With
/// `accel_form` the integrand is the squared lateral acceleration instead.
double smoothness_cost(const ManeuverPlan & plan, double dt, bool accel_form = false);

/// Weighted squared-hinge penalties on |a_y|, |j_y| and |kappa| = |a_y|/v^2
/// sampled over the plan horizon.
double bounds_cost(const ManeuverPlan & plan, const ActuationLimits & limits,
                   const CostWeights & weights, double dt);

CostBreakdown total_cost(const ManeuverPlan & plan, std::span<const ObstacleTrack> tracks,
                         const SafetyParams & safety, const CostWeights & weights,
                         const ActuationLimits & limits, double dt);

/// Repeated-evaluation context: obstacle states are resampled onto the cost
/// grid once, so each evaluate() only samples the candidate plan. One
/// instance per thread; evaluate() reuses internal scratch.
class CostEvaluator {
 public:
  CostEvaluator(std::span<const ObstacleTrack> tracks, const SafetyParams & safety,
                const CostWeights & weights, const ActuationLimits & limits, double t0,
                double t_end, double dt);

  CostBreakdown evaluate(const ManeuverPlan & plan);

  double t0() const { return t0_; }
  double t_end() const { return t_end_; }
  double dt() const { return dt_; }

 private:
  SafetyParams safety_;
  CostWeights weights_;
  ActuationLimits limits_;
  double t0_, t_end_, dt_;
  std::size_t n_;  // grid points beyond t0 (samples k = 0..n_)
  std::vector<std::array<std::vector<double>, 4>> obstacles_;  // x, y, vx, vy on k=1..n_
  std::vector<double> ex_;                                     // ego x on k=1..n_
  std::vector<double> y_, vy_, ay_, jy_;                       // scratch, k=0..n_
};

/// Box constraints for the free maneuver parameters (natural units).
struct ParamBox {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t size() const { return lower.size(); }
  double width(std::size_t i) const { return upper[i] - lower[i]; }
  bool contains(std::span<const double> p, double slack = 0.0) const;
  std::vector<double> clamp(std::span<const double> p) const;
};

using PlanBuilder = std::function<ManeuverPlan(std::span<const double>)>;

/// Central-difference gradient of the total cost with respect to the free
/// parameters (step 1e-6 * max(1, |p_i|)). Throws std::domain_error when
/// params lie outside the box.
std::vector<double> cost_gradient(const PlanBuilder & builder, const ParamBox & box,
                                  CostEvaluator & evaluator, std::span<const double> params);

/// Analytic gradient of the TTC term of a double-quintic lane change with
/// respect to (y_s, v_s, a_s) at fixed switching time; cross-check for the
/// numeric path (the profile is linear in these parameters).
std::array<double, 3> ttc_cost_junction_gradient(double delta_y_total, double duration,
                                                 const JunctionState & junction, double speed,
                                                 std::span<const ObstacleTrack> tracks,
                                                 const SafetyParams & params, double dt);

}  // namespace dqplan

#endif  // DQPLAN_COST_HPP_
