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

#ifndef DQPLAN_KERNELS_HPP_
#define DQPLAN_KERNELS_HPP_

#include <cstddef>

namespace dqplan::kernels {

/// Sampled-arithmetic inner loops shared by the cost and safety evaluators.
/// Every entry has a scalar reference implementation; wider variants must be
/// bit-compatible up to floating-point reassociation (see kernels_test).
struct Ops {
  const char * name;

  // Evaluate a quintic (local-time coefficients c[0..5]) and its first three
  // derivatives at tau_i = tau0 + i*dt. Any of the output pointers may be null.
  void (*quintic_sample)(const double c[6], double tau0, double dt, std::size_t n,
                         double * y, double * vy, double * ay, double * jy);

  // Sum over samples of the quadratic TTC deficit penalty phi(ttc_i).
  // gap = |r|, closing = -(r . v_rel)/gap; ttc = gap/closing when closing > 0,
  // +inf otherwise (zero penalty); ttc = 0 at gap = 0. When `normalized`,
  // phi = ((t_safe - ttc)/t_safe)^2 on the active set, else (t_safe - ttc)^2.
  double (*ttc_penalty_sum)(const double * ex, const double * ey,
                            const double * evx, const double * evy,
                            const double * ox, const double * oy,
                            const double * ovx, const double * ovy,
                            std::size_t n, double t_safe, bool normalized);

  // Sum over k = 3..n-1 of (y[k] - 3 y[k-1] + 3 y[k-2] - y[k-3])^2.
  double (*third_diff_sq_sum)(const double * y, std::size_t n);

  // Sum over samples of max(0, |x_i| - limit)^2.
  double (*hinge_sq_sum)(const double * x, std::size_t n, double limit);
};

const Ops & scalar();

#if defined(__x86_64__) || defined(_M_X64)
// Only callable when the CPU supports AVX2+FMA; active() checks for you.
const Ops & avx2();
bool cpu_has_avx2();
#endif

// Best implementation for this machine, resolved once. The DQPLAN_KERNELS
// environment variable ("scalar" | "avx2") forces a specific one.
const Ops & active();

}  // namespace dqplan::kernels

#endif  // DQPLAN_KERNELS_HPP_
