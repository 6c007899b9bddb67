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

#ifndef DQPLAN_QUINTIC_HPP_
#define DQPLAN_QUINTIC_HPP_

#include <array>

namespace dqplan {

/// Lateral endpoint conditions of one quintic segment: position, velocity
/// and acceleration at both ends.
struct BoundaryConditions {
  double y0{0.0};
  double yT{0.0};
  double v0{0.0};
  double vT{0.0};
  double acc0{0.0};
  double accT{0.0};
};

/// Degree-5 polynomial in local time tau = t - t_start, valid on
/// [t_start, t_end]. Coefficients are stored lowest order first so the
/// conditioning of the boundary solve depends only on the duration.
struct QuinticSegment {
  std::array<double, 6> coeffs{};
  double t_start{0.0};
  double t_end{0.0};

  double duration() const { return t_end - t_start; }

  // Value (order 0) or derivative (order 1..3) at global time t.
  // Throws std::domain_error when t is outside the validity window or the
  // order is unsupported. A relative slack of 1e-9 absorbs roundoff at the
  // window edges.
  double eval(double t, int order = 0) const;
};

/// Solve the 6x6 boundary system for the unique quintic meeting `bc` over a
/// window of length `duration` starting at `t_start`. Throws
/// std::domain_error for non-positive durations; the system itself is always
/// invertible for positive durations.
QuinticSegment solve_boundary(const BoundaryConditions & bc, double duration,
                              double t_start = 0.0);

}  // namespace dqplan

#endif  // DQPLAN_QUINTIC_HPP_
