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

#include "dqplan/quintic.hpp"

#include <cmath>
#include <stdexcept>

namespace dqplan {

double QuinticSegment::eval(double t, int order) const
{
  const double span = duration();
  const double slack = 1e-9 * std::max(1.0, span);
  if (t < t_start - slack || t > t_end + slack) {
    throw std::domain_error("QuinticSegment::eval: time outside segment window");
  }
  const double tau = std::clamp(t - t_start, 0.0, span);
  const auto & c = coeffs;
  switch (order) {
    case 0:
      return ((((c[5] * tau + c[4]) * tau + c[3]) * tau + c[2]) * tau + c[1]) * tau + c[0];
    case 1:
      return (((5.0 * c[5] * tau + 4.0 * c[4]) * tau + 3.0 * c[3]) * tau + 2.0 * c[2]) * tau +
             c[1];
    case 2:
      return ((20.0 * c[5] * tau + 12.0 * c[4]) * tau + 6.0 * c[3]) * tau + 2.0 * c[2];
    case 3:
      return (60.0 * c[5] * tau + 24.0 * c[4]) * tau + 6.0 * c[3];
    default:
      throw std::domain_error("QuinticSegment::eval: order must be 0..3");
  }
}

QuinticSegment solve_boundary(const BoundaryConditions & bc, double duration, double t_start)
{
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw std::domain_error("solve_boundary: duration must be positive");
  }
  const double T = duration;
  const double T2 = T * T;

  // a0..a2 follow directly from the start conditions; the remaining 3x3
  // system in a3..a5 has the closed-form inverse below.
  const double b1 = bc.yT - bc.y0 - bc.v0 * T - 0.5 * bc.acc0 * T2;
  const double b2 = bc.vT - bc.v0 - bc.acc0 * T;
  const double b3 = bc.accT - bc.acc0;

  const double T3 = T2 * T;
  const double T4 = T3 * T;
  const double T5 = T4 * T;

  QuinticSegment seg;
  seg.t_start = t_start;
  seg.t_end = t_start + duration;
  seg.coeffs[0] = bc.y0;
  seg.coeffs[1] = bc.v0;
  seg.coeffs[2] = 0.5 * bc.acc0;
  seg.coeffs[3] = (20.0 * b1 - 8.0 * b2 * T + b3 * T2) / (2.0 * T3);
  seg.coeffs[4] = (-30.0 * b1 + 14.0 * b2 * T - 2.0 * b3 * T2) / (2.0 * T4);
  seg.coeffs[5] = (12.0 * b1 - 6.0 * b2 * T + b3 * T2) / (2.0 * T5);
  for (double c : seg.coeffs) {
    if (!std::isfinite(c)) {
      throw std::domain_error("solve_boundary: non-finite coefficient (check inputs)");
    }
  }
  return seg;
}

}  // namespace dqplan
