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

#include "dqplan/kernels.hpp"

#include <cmath>

namespace dqplan::kernels {
namespace {

void quintic_sample_scalar(const double c[6], double tau0, double dt, std::size_t n,
                           double * y, double * vy, double * ay, double * jy)
{
  for (std::size_t i = 0; i < n; ++i) {
    const double tau = tau0 + static_cast<double>(i) * dt;
    if (y) {
      y[i] = ((((c[5] * tau + c[4]) * tau + c[3]) * tau + c[2]) * tau + c[1]) * tau + c[0];
    }
    if (vy) {
      vy[i] = (((5.0 * c[5] * tau + 4.0 * c[4]) * tau + 3.0 * c[3]) * tau + 2.0 * c[2]) * tau +
              c[1];
    }
    if (ay) {
      ay[i] = ((20.0 * c[5] * tau + 12.0 * c[4]) * tau + 6.0 * c[3]) * tau + 2.0 * c[2];
    }
    if (jy) {
      jy[i] = (60.0 * c[5] * tau + 24.0 * c[4]) * tau + 6.0 * c[3];
    }
  }
}

double ttc_penalty_sum_scalar(const double * ex, const double * ey, const double * evx,
                              const double * evy, const double * ox, const double * oy,
                              const double * ovx, const double * ovy, std::size_t n,
                              double t_safe, bool normalized)
{
  const double inv_scale = normalized ? 1.0 / t_safe : 1.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double rx = ox[i] - ex[i];
    const double ry = oy[i] - ey[i];
    const double gap = std::sqrt(rx * rx + ry * ry);
    double deficit;
    if (gap <= 0.0) {
      deficit = t_safe;  // coincident: ttc = 0, maximum deficit
    } else {
      const double closing = -(rx * (ovx[i] - evx[i]) + ry * (ovy[i] - evy[i])) / gap;
      if (closing <= 0.0) {
        continue;  // not on a collision course: ttc = +inf
      }
      const double ttc = gap / closing;
      if (ttc >= t_safe) {
        continue;
      }
      deficit = t_safe - ttc;
    }
    const double d = deficit * inv_scale;
    sum += d * d;
  }
  return sum;
}

double third_diff_sq_sum_scalar(const double * y, std::size_t n)
{
  double sum = 0.0;
  for (std::size_t k = 3; k < n; ++k) {
    const double d = y[k] - 3.0 * y[k - 1] + 3.0 * y[k - 2] - y[k - 3];
    sum += d * d;
  }
  return sum;
}

double hinge_sq_sum_scalar(const double * x, std::size_t n, double limit)
{
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double excess = std::fabs(x[i]) - limit;
    if (excess > 0.0) {
      sum += excess * excess;
    }
  }
  return sum;
}

}  // namespace

const Ops & scalar()
{
  static const Ops ops{
    "scalar", quintic_sample_scalar, ttc_penalty_sum_scalar, third_diff_sq_sum_scalar,
    hinge_sq_sum_scalar};
  return ops;
}

}  // namespace dqplan::kernels
