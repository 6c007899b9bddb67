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

// AVX2 variants of the sampled kernels. Per-lane arithmetic mirrors the
// scalar reference operation for operation (no FMA contraction) so results
// differ only by the order of the final accumulation.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "dqplan/kernels.hpp"

namespace dqplan::kernels {
namespace {

inline double hsum(__m256d v)
{
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void quintic_sample_avx2(const double c[6], double tau0, double dt, std::size_t n,
                         double * y, double * vy, double * ay, double * jy)
{
  const __m256d c0 = _mm256_set1_pd(c[0]);
  const __m256d c1 = _mm256_set1_pd(c[1]);
  const __m256d c2 = _mm256_set1_pd(c[2]);
  const __m256d c3 = _mm256_set1_pd(c[3]);
  const __m256d c4 = _mm256_set1_pd(c[4]);
  const __m256d c5 = _mm256_set1_pd(c[5]);
  const __m256d v5 = _mm256_set1_pd(5.0 * c[5]);
  const __m256d v4 = _mm256_set1_pd(4.0 * c[4]);
  const __m256d v3 = _mm256_set1_pd(3.0 * c[3]);
  const __m256d v2 = _mm256_set1_pd(2.0 * c[2]);
  const __m256d a5 = _mm256_set1_pd(20.0 * c[5]);
  const __m256d a4 = _mm256_set1_pd(12.0 * c[4]);
  const __m256d a3 = _mm256_set1_pd(6.0 * c[3]);
  const __m256d a2 = _mm256_set1_pd(2.0 * c[2]);
  const __m256d j5 = _mm256_set1_pd(60.0 * c[5]);
  const __m256d j4 = _mm256_set1_pd(24.0 * c[4]);
  const __m256d j3 = _mm256_set1_pd(6.0 * c[3]);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // tau computed per lane exactly as the scalar loop: tau0 + k*dt.
    const __m256d k = _mm256_set_pd(static_cast<double>(i + 3), static_cast<double>(i + 2),
                                    static_cast<double>(i + 1), static_cast<double>(i));
    const __m256d tau = _mm256_add_pd(_mm256_set1_pd(tau0), _mm256_mul_pd(k, _mm256_set1_pd(dt)));
    if (y) {
      __m256d acc = _mm256_add_pd(_mm256_mul_pd(c5, tau), c4);
      acc = _mm256_add_pd(_mm256_mul_pd(acc, tau), c3);
      acc = _mm256_add_pd(_mm256_mul_pd(acc, tau), c2);
      acc = _mm256_add_pd(_mm256_mul_pd(acc, tau), c1);
      acc = _mm256_add_pd(_mm256_mul_pd(acc, tau), c0);
      _mm256_storeu_pd(y + i, acc);
    }
    if (vy) {
      __m256d acc = _mm256_add_pd(_mm256_mul_pd(v5, tau), v4);
      acc = _mm256_add_pd(_mm256_mul_pd(acc, tau), v3);
      acc = _mm256_add_pd(_mm256_mul_pd(acc, tau), v2);
      acc = _mm256_add_pd(_mm256_mul_pd(acc, tau), c1);
      _mm256_storeu_pd(vy + i, acc);
    }
    if (ay) {
      __m256d acc = _mm256_add_pd(_mm256_mul_pd(a5, tau), a4);
      acc = _mm256_add_pd(_mm256_mul_pd(acc, tau), a3);
      acc = _mm256_add_pd(_mm256_mul_pd(acc, tau), a2);
      _mm256_storeu_pd(ay + i, acc);
    }
    if (jy) {
      __m256d acc = _mm256_add_pd(_mm256_mul_pd(j5, tau), j4);
      acc = _mm256_add_pd(_mm256_mul_pd(acc, tau), j3);
      _mm256_storeu_pd(jy + i, acc);
    }
  }
  // Tail with the same absolute-index tau arithmetic as the scalar kernel.
  for (; i < n; ++i) {
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

double ttc_penalty_sum_avx2(const double * ex, const double * ey, const double * evx,
                            const double * evy, const double * ox, const double * oy,
                            const double * ovx, const double * ovy, std::size_t n,
                            double t_safe, bool normalized)
{
  const __m256d vsafe = _mm256_set1_pd(t_safe);
  const __m256d vinv = _mm256_set1_pd(normalized ? 1.0 / t_safe : 1.0);
  const __m256d vzero = _mm256_setzero_pd();
  __m256d vsum = vzero;

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d rx = _mm256_sub_pd(_mm256_loadu_pd(ox + i), _mm256_loadu_pd(ex + i));
    const __m256d ry = _mm256_sub_pd(_mm256_loadu_pd(oy + i), _mm256_loadu_pd(ey + i));
    const __m256d dvx = _mm256_sub_pd(_mm256_loadu_pd(ovx + i), _mm256_loadu_pd(evx + i));
    const __m256d dvy = _mm256_sub_pd(_mm256_loadu_pd(ovy + i), _mm256_loadu_pd(evy + i));
    const __m256d gap =
      _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(rx, rx), _mm256_mul_pd(ry, ry)));
    const __m256d num =
      _mm256_sub_pd(vzero, _mm256_add_pd(_mm256_mul_pd(rx, dvx), _mm256_mul_pd(ry, dvy)));
    const __m256d closing = _mm256_div_pd(num, gap);
    const __m256d ttc = _mm256_div_pd(gap, closing);

    const __m256d m_zero_gap = _mm256_cmp_pd(gap, vzero, _CMP_LE_OQ);
    const __m256d m_closing = _mm256_cmp_pd(closing, vzero, _CMP_GT_OQ);
    const __m256d m_below = _mm256_cmp_pd(ttc, vsafe, _CMP_LT_OQ);
    const __m256d m_active = _mm256_andnot_pd(m_zero_gap, _mm256_and_pd(m_closing, m_below));

    __m256d deficit = _mm256_and_pd(m_active, _mm256_sub_pd(vsafe, ttc));
    deficit = _mm256_blendv_pd(deficit, vsafe, m_zero_gap);
    const __m256d d = _mm256_mul_pd(deficit, vinv);
    vsum = _mm256_add_pd(vsum, _mm256_mul_pd(d, d));
  }
  double sum = hsum(vsum);
  if (i < n) {
    sum += scalar().ttc_penalty_sum(ex + i, ey + i, evx + i, evy + i, ox + i, oy + i, ovx + i,
                                    ovy + i, n - i, t_safe, normalized);
  }
  return sum;
}

double third_diff_sq_sum_avx2(const double * y, std::size_t n)
{
  if (n < 4) {
    return 0.0;
  }
  const __m256d three = _mm256_set1_pd(3.0);
  __m256d vsum = _mm256_setzero_pd();
  std::size_t k = 3;
  for (; k + 4 <= n; k += 4) {
    const __m256d y0 = _mm256_loadu_pd(y + k - 3);
    const __m256d y1 = _mm256_loadu_pd(y + k - 2);
    const __m256d y2 = _mm256_loadu_pd(y + k - 1);
    const __m256d y3 = _mm256_loadu_pd(y + k);
    const __m256d d = _mm256_sub_pd(
      _mm256_add_pd(_mm256_sub_pd(y3, _mm256_mul_pd(three, y2)), _mm256_mul_pd(three, y1)), y0);
    vsum = _mm256_add_pd(vsum, _mm256_mul_pd(d, d));
  }
  double sum = hsum(vsum);
  for (; k < n; ++k) {
    const double d = y[k] - 3.0 * y[k - 1] + 3.0 * y[k - 2] - y[k - 3];
    sum += d * d;
  }
  return sum;
}

double hinge_sq_sum_avx2(const double * x, std::size_t n, double limit)
{
  const __m256d vlim = _mm256_set1_pd(limit);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m256d vzero = _mm256_setzero_pd();
  __m256d vsum = vzero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(x + i));
    const __m256d excess = _mm256_max_pd(vzero, _mm256_sub_pd(v, vlim));
    vsum = _mm256_add_pd(vsum, _mm256_mul_pd(excess, excess));
  }
  double sum = hsum(vsum);
  for (; i < n; ++i) {
    const double excess = std::fabs(x[i]) - limit;
    if (excess > 0.0) {
      sum += excess * excess;
    }
  }
  return sum;
}

}  // namespace

bool cpu_has_avx2()
{
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

const Ops & avx2()
{
  static const Ops ops{
    "avx2", quintic_sample_avx2, ttc_penalty_sum_avx2, third_diff_sq_sum_avx2, hinge_sq_sum_avx2};
  return ops;
}

}  // namespace dqplan::kernels

#endif  // x86_64
