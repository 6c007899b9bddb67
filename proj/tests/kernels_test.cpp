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
#include <random>
#include <vector>

#include "gtest/gtest.h"

namespace dqplan::kernels {
namespace {

std::vector<double> random_vec(std::mt19937 & rng, std::size_t n, double lo, double hi)
{
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (double & x : v) x = dist(rng);
  return v;
}

TEST(KernelsTest, QuinticSampleMatchesDirectEvaluation)
{
  const double c[6] = {0.3, -1.2, 0.05, 0.28, -0.084, 0.00672};
  const std::size_t n = 257;
  const double tau0 = 0.13, dt = 0.05;
  std::vector<double> y(n), vy(n), ay(n), jy(n);
  scalar().quintic_sample(c, tau0, dt, n, y.data(), vy.data(), ay.data(), jy.data());
  for (std::size_t i = 0; i < n; i += 37) {
    const double t = tau0 + static_cast<double>(i) * dt;
    double ref = 0.0;
    for (int k = 5; k >= 0; --k) ref = ref * t + c[k];
    EXPECT_NEAR(y[i], ref, 1e-12 * std::max(1.0, std::fabs(ref)));
    const double vref = c[1] + 2 * c[2] * t + 3 * c[3] * t * t + 4 * c[4] * t * t * t +
                        5 * c[5] * t * t * t * t;
    EXPECT_NEAR(vy[i], vref, 1e-11);
    EXPECT_NEAR(ay[i], 2 * c[2] + 6 * c[3] * t + 12 * c[4] * t * t + 20 * c[5] * t * t * t,
                1e-11);
    EXPECT_NEAR(jy[i], 6 * c[3] + 24 * c[4] * t + 60 * c[5] * t * t, 1e-11);
  }
}

#if defined(__x86_64__) || defined(_M_X64)

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override
  {
    if (!cpu_has_avx2()) {
      GTEST_SKIP() << "no AVX2 on this machine";
    }
  }
};

TEST_F(KernelEquivalence, QuinticSample)
{
  std::mt19937 rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    const auto cv = random_vec(rng, 6, -2.0, 2.0);
    const double c[6] = {cv[0], cv[1], cv[2], cv[3], cv[4], cv[5]};
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 300);
    std::vector<double> ys(n), yv(n), as(n), av(n), js(n), jv(n), vs(n), vv(n);
    scalar().quintic_sample(c, 0.31, 0.02, n, ys.data(), vs.data(), as.data(), js.data());
    avx2().quintic_sample(c, 0.31, 0.02, n, yv.data(), vv.data(), av.data(), jv.data());
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_DOUBLE_EQ(ys[i], yv[i]);
      EXPECT_DOUBLE_EQ(vs[i], vv[i]);
      EXPECT_DOUBLE_EQ(as[i], av[i]);
      EXPECT_DOUBLE_EQ(js[i], jv[i]);
    }
  }
}

TEST_F(KernelEquivalence, TtcPenaltySum)
{
  std::mt19937 rng(11);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 200);
    const auto ex = random_vec(rng, n, 0.0, 100.0);
    const auto ey = random_vec(rng, n, -5.0, 5.0);
    const auto evx = random_vec(rng, n, 5.0, 25.0);
    const auto evy = random_vec(rng, n, -2.0, 2.0);
    const auto ox = random_vec(rng, n, 0.0, 130.0);
    const auto oy = random_vec(rng, n, -5.0, 5.0);
    const auto ovx = random_vec(rng, n, 5.0, 25.0);
    const auto ovy = random_vec(rng, n, -2.0, 2.0);
    const bool normalized = (rep % 2) == 0;
    const double a =
      scalar().ttc_penalty_sum(ex.data(), ey.data(), evx.data(), evy.data(), ox.data(),
                               oy.data(), ovx.data(), ovy.data(), n, 3.0, normalized);
    const double b =
      avx2().ttc_penalty_sum(ex.data(), ey.data(), evx.data(), evy.data(), ox.data(),
                             oy.data(), ovx.data(), ovy.data(), n, 3.0, normalized);
    EXPECT_NEAR(a, b, 1e-11 * std::max(1.0, a));
  }
}

TEST_F(KernelEquivalence, ThirdDiffAndHinge)
{
  std::mt19937 rng(13);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 400);
    const auto y = random_vec(rng, n, -10.0, 10.0);
    EXPECT_NEAR(scalar().third_diff_sq_sum(y.data(), n), avx2().third_diff_sq_sum(y.data(), n),
                1e-10 * std::max(1.0, scalar().third_diff_sq_sum(y.data(), n)));
    EXPECT_NEAR(scalar().hinge_sq_sum(y.data(), n, 4.0), avx2().hinge_sq_sum(y.data(), n, 4.0),
                1e-11 * std::max(1.0, scalar().hinge_sq_sum(y.data(), n, 4.0)));
  }
}

#endif  // x86_64

TEST(KernelsTest, ActiveDispatchReturnsUsableOps)
{
  const Ops & ops = active();
  ASSERT_NE(ops.name, nullptr);
  const double c[6] = {1, 0, 0, 0, 0, 0};
  double y = -1;
  ops.quintic_sample(c, 0.0, 0.1, 1, &y, nullptr, nullptr, nullptr);
  EXPECT_DOUBLE_EQ(y, 1.0);
}

TEST(KernelsTest, HingeSumCountsOnlyExcess)
{
  const double x[5] = {0.5, -3.0, 2.0, -0.1, 4.0};
  // limit 2: only |-3| and |4| exceed, by 1 and 2.
  EXPECT_DOUBLE_EQ(scalar().hinge_sq_sum(x, 5, 2.0), 1.0 + 4.0);
  EXPECT_DOUBLE_EQ(scalar().hinge_sq_sum(x, 5, 10.0), 0.0);
}

TEST(KernelsTest, ThirdDiffZeroForQuadratic)
{
  std::vector<double> y(50);
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double t = 0.1 * static_cast<double>(i);
    y[i] = 2.0 + 3.0 * t - 0.5 * t * t;
  }
  EXPECT_NEAR(scalar().third_diff_sq_sum(y.data(), y.size()), 0.0, 1e-22);
}

}  // namespace
}  // namespace dqplan::kernels
