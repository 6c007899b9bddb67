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

#ifndef DQPLAN_BASELINE_CURVES_HPP_
#define DQPLAN_BASELINE_CURVES_HPP_

#include <array>
#include <vector>

namespace dqplan {

/// Parametric degree-5 Bezier in the (t, y) plane. Control abscissae are
/// spread near the window ends while the ordinates stay clustered, which
/// yields a sharper interior transition than the quintic with the same
/// rest-to-rest endpoint conditions.
class BezierQuinticSegment {
 public:
  // Rest-to-rest transition from y_from to y_to over [t_start, t_start+duration]
  // with end-side control spread `end_spread` (fraction of the duration).
  BezierQuinticSegment(double y_from, double y_to, double duration, double t_start,
                       double end_spread = 0.1);

  double t_start() const { return t_start_; }
  double t_end() const { return t_start_ + duration_; }

  // y(t) and time derivatives up to order 3 (chain rule through the
  // monotone reparameterization t(s)).
  double eval(double t, int order = 0) const;

 private:
  double param_for_time(double t) const;

  double t_start_;
  double duration_;
  std::array<double, 6> ctrl_t_{};
  std::array<double, 6> ctrl_y_{};
};

/// Clamped cubic B-spline lateral profile through uniformly spaced control
/// levels 0 -> delta_y; the first and last levels are tripled so the profile
/// starts and ends at rest.
class BSplineSegment {
 public:
  BSplineSegment(double y_from, double y_to, double duration, double t_start,
                 int levels = 7);

  double t_start() const { return t_start_; }
  double t_end() const { return t_start_ + duration_; }

  double eval(double t, int order = 0) const;

 private:
  double t_start_;
  double duration_;
  std::vector<double> knots_;     // normalized to [0, 1]
  std::vector<double> controls_;  // lateral levels
};

}  // namespace dqplan

#endif  // DQPLAN_BASELINE_CURVES_HPP_
