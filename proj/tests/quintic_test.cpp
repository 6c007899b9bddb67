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

#include <array>
#include <cmath>
#include <random>

#include "gtest/gtest.h"

namespace dqplan {
namespace {

// Independent oracle: assemble the full 6x6 boundary matrix and solve it by
// Gaussian elimination with partial pivoting. Kept free of any call into the
// implementation path it checks.
std::array<double, 6> gaussian_oracle(const BoundaryConditions & bc, double T)
{
  double M[6][7] = {};
  const double T2 = T * T, T3 = T2 * T, T4 = T3 * T, T5 = T4 * T;
  const double rows[6][7] = {
    {1, 0, 0, 0, 0, 0, bc.y0},
    {1, T, T2, T3, T4, T5, bc.yT},
    {0, 1, 0, 0, 0, 0, bc.v0},
    {0, 1, 2 * T, 3 * T2, 4 * T3, 5 * T4, bc.vT},
    {0, 0, 2, 0, 0, 0, bc.acc0},
    {0, 0, 2, 6 * T, 12 * T2, 20 * T3, bc.accT},
  };
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 7; ++j) {
      M[i][j] = rows[i][j];
    }
  }
  for (int col = 0; col < 6; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 6; ++r) {
      if (std::fabs(M[r][col]) > std::fabs(M[pivot][col])) {
        pivot = r;
      }
    }
    for (int j = 0; j < 7; ++j) {
      std::swap(M[col][j], M[pivot][j]);
    }
    for (int r = 0; r < 6; ++r) {
      if (r == col) {
        continue;
      }
      const double f = M[r][col] / M[col][col];
      for (int j = col; j < 7; ++j) {
        M[r][j] -= f * M[col][j];
      }
    }
  }
  std::array<double, 6> a{};
  for (int i = 0; i < 6; ++i) {
    a[i] = M[i][6] / M[i][i];
  }
  return a;
}

TEST(SolveBoundaryTest, RestToRestMatchesFrozenCoefficients)
{
  BoundaryConditions bc;
  bc.yT = 3.5;
  const QuinticSegment seg = solve_boundary(bc, 5.0);
  EXPECT_NEAR(seg.coeffs[0], 0.0, 1e-12);
  EXPECT_NEAR(seg.coeffs[1], 0.0, 1e-12);
  EXPECT_NEAR(seg.coeffs[2], 0.0, 1e-12);
  EXPECT_NEAR(seg.coeffs[3], 0.28, 1e-12);
  EXPECT_NEAR(seg.coeffs[4], -0.084, 1e-12);
  EXPECT_NEAR(seg.coeffs[5], 0.00672, 1e-12);
}

TEST(SolveBoundaryTest, ZeroRightHandSideGivesZeroPolynomial)
{
  const QuinticSegment seg = solve_boundary(BoundaryConditions{}, 4.0);
  for (double c : seg.coeffs) {
    EXPECT_DOUBLE_EQ(c, 0.0);
  }
}

TEST(SolveBoundaryTest, RestToRestMidpointSymmetry)
{
  for (const double dy : {-7.0, 1.0, 3.5, 18.0}) {
    for (const double T : {2.0, 5.0, 9.0}) {
      BoundaryConditions bc;
      bc.yT = dy;
      const QuinticSegment seg = solve_boundary(bc, T);
      EXPECT_NEAR(seg.eval(T / 2.0), dy / 2.0, 1e-10 * std::max(1.0, std::fabs(dy)));
    }
  }
}

TEST(SolveBoundaryTest, MatchesGaussianEliminationOracle)
{
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> val(-100.0, 100.0);
  std::uniform_real_distribution<double> dur(0.5, 12.0);
  for (int rep = 0; rep < 500; ++rep) {
    const BoundaryConditions bc{val(rng), val(rng), val(rng), val(rng), val(rng), val(rng)};
    const double T = dur(rng);
    const QuinticSegment seg = solve_boundary(bc, T);
    const auto oracle = gaussian_oracle(bc, T);
    for (int i = 0; i < 6; ++i) {
      EXPECT_NEAR(seg.coeffs[i], oracle[i], 1e-9 * std::max(1.0, std::fabs(oracle[i])))
        << "coefficient " << i << " (T=" << T << ")";
    }
  }
}

TEST(SolveBoundaryTest, RoundTripReproducesBoundaryConditions)
{
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> val(-100.0, 100.0);
  std::uniform_real_distribution<double> dur(0.5, 10.0);
  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const BoundaryConditions bc{val(rng), val(rng), val(rng), val(rng), val(rng), val(rng)};
    const double T = dur(rng);
    const QuinticSegment seg = solve_boundary(bc, T, 0.0);
    worst = std::max(worst, std::fabs(seg.eval(0, 0) - bc.y0));
    worst = std::max(worst, std::fabs(seg.eval(0, 1) - bc.v0));
    worst = std::max(worst, std::fabs(seg.eval(0, 2) - bc.acc0));
    worst = std::max(worst, std::fabs(seg.eval(T, 0) - bc.yT));
    worst = std::max(worst, std::fabs(seg.eval(T, 1) - bc.vT));
    worst = std::max(worst, std::fabs(seg.eval(T, 2) - bc.accT));
  }
  EXPECT_LE(worst, 1e-9);
}

TEST(SolveBoundaryTest, LinearInRightHandSide)
{
  const BoundaryConditions bc{1.0, 4.0, -2.0, 0.5, 0.3, -0.7};
  const double alpha = -2.5;
  BoundaryConditions scaled;
  scaled.y0 = alpha * bc.y0;
  scaled.yT = alpha * bc.yT;
  scaled.v0 = alpha * bc.v0;
  scaled.vT = alpha * bc.vT;
  scaled.acc0 = alpha * bc.acc0;
  scaled.accT = alpha * bc.accT;
  const QuinticSegment a = solve_boundary(bc, 3.0);
  const QuinticSegment b = solve_boundary(scaled, 3.0);
  for (int i = 0; i < 6; ++i) {
    EXPECT_NEAR(b.coeffs[i], alpha * a.coeffs[i], 1e-12 * std::max(1.0, std::fabs(a.coeffs[i])));
  }
}

TEST(SolveBoundaryTest, RejectsNonPositiveDuration)
{
  EXPECT_THROW(solve_boundary(BoundaryConditions{}, 0.0), std::domain_error);
  EXPECT_THROW(solve_boundary(BoundaryConditions{}, -1.0), std::domain_error);
}

TEST(EvalTest, EndpointValuesOfRestToRestSegment)
{
  BoundaryConditions bc;
  bc.yT = 3.5;
  const QuinticSegment seg = solve_boundary(bc, 5.0);
  EXPECT_NEAR(seg.eval(0, 0), 0.0, 1e-12);
  EXPECT_NEAR(seg.eval(0, 1), 0.0, 1e-12);
  EXPECT_NEAR(seg.eval(0, 2), 0.0, 1e-12);
  EXPECT_NEAR(seg.eval(5, 0), 3.5, 1e-12);
  EXPECT_NEAR(seg.eval(5, 1), 0.0, 1e-12);
  EXPECT_NEAR(seg.eval(5, 2), 0.0, 1e-12);
  // Initial jerk 6*a3.
  EXPECT_NEAR(seg.eval(0, 3), 1.68, 1e-12);
}

TEST(EvalTest, OutsideWindowThrows)
{
  const QuinticSegment seg = solve_boundary(BoundaryConditions{}, 2.0, 1.0);
  EXPECT_THROW(seg.eval(0.5), std::domain_error);
  EXPECT_THROW(seg.eval(3.5), std::domain_error);
  EXPECT_NO_THROW(seg.eval(1.0));
  EXPECT_NO_THROW(seg.eval(3.0));
  EXPECT_THROW(seg.eval(2.0, 4), std::domain_error);
}

TEST(EvalTest, DerivativeConsistencyByCentralDifference)
{
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> val(-100.0, 100.0);
  for (int rep = 0; rep < 100; ++rep) {
    const BoundaryConditions bc{val(rng), val(rng), val(rng), val(rng), val(rng), val(rng)};
    const double T = 4.0;
    const QuinticSegment seg = solve_boundary(bc, T);
    const double h = 1e-4 * T;
    for (int order = 0; order < 3; ++order) {
      for (double t : {0.3 * T, 0.5 * T, 0.8 * T}) {
        const double fd = (seg.eval(t + h, order) - seg.eval(t - h, order)) / (2.0 * h);
        const double analytic = seg.eval(t, order + 1);
        const double scale = std::max(1.0, std::fabs(analytic));
        EXPECT_NEAR(fd, analytic, 1e-5 * scale);
      }
    }
  }
}

}  // namespace
}  // namespace dqplan
