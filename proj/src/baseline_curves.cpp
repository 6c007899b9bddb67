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

#include "dqplan/baseline_curves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dqplan {
namespace {

// Bernstein value and s-derivatives (orders 0..3) of a degree-5 curve.
void bernstein5(const std::array<double, 6> & p, double s, double out[4])
{
  std::array<double, 6> d1{};
  std::array<double, 6> d2{};
  std::array<double, 6> d3{};
  for (int i = 0; i < 5; ++i) d1[i] = p[i + 1] - p[i];
  for (int i = 0; i < 4; ++i) d2[i] = d1[i + 1] - d1[i];
  for (int i = 0; i < 3; ++i) d3[i] = d2[i + 1] - d2[i];

  const double u = 1.0 - s;
  auto bern = [&](const std::array<double, 6> & c, int degree) {
    // Horner-style evaluation of sum c_i * C(degree,i) s^i u^(degree-i).
    double binom = 1.0;
    double sp = 1.0;
    double acc = 0.0;
    for (int i = 0; i <= degree; ++i) {
      acc += c[i] * binom * sp * std::pow(u, degree - i);
      binom = binom * (degree - i) / (i + 1.0);
      sp *= s;
    }
    return acc;
  };
  out[0] = bern(p, 5);
  out[1] = 5.0 * bern(d1, 4);
  out[2] = 20.0 * bern(d2, 3);
  out[3] = 60.0 * bern(d3, 2);
}

void check_window(double t, double t0, double t1)
{
  const double slack = 1e-9 * std::max(1.0, t1 - t0);
  if (t < t0 - slack || t > t1 + slack) {
    throw std::domain_error("baseline curve: time outside segment window");
  }
}

}  // namespace

BezierQuinticSegment::BezierQuinticSegment(double y_from, double y_to, double duration,
                                           double t_start, double end_spread)
: t_start_(t_start), duration_(duration)
{
  if (!(duration > 0.0)) {
    throw std::domain_error("BezierQuinticSegment: duration must be positive");
  }
  if (!(end_spread > 0.0) || !(end_spread < 0.25)) {
    throw std::domain_error("BezierQuinticSegment: end_spread must be in (0, 0.25)");
  }
  const double e = end_spread * duration;
  ctrl_t_ = {0.0, e, 2.0 * e, duration - 2.0 * e, duration - e, duration};
  ctrl_y_ = {y_from, y_from, y_from, y_to, y_to, y_to};
}

double BezierQuinticSegment::param_for_time(double t) const
{
  const double target = std::clamp(t - t_start_, 0.0, duration_);
  // t(s) is strictly increasing; Newton with bisection safeguard.
  double lo = 0.0, hi = 1.0;
  double s = target / duration_;
  for (int it = 0; it < 60; ++it) {
    double tv[4];
    bernstein5(ctrl_t_, s, tv);
    const double f = tv[0] - target;
    if (std::fabs(f) < 1e-13 * std::max(1.0, duration_)) {
      break;
    }
    if (f > 0.0) {
      hi = s;
    } else {
      lo = s;
    }
    const double step = f / tv[1];
    s -= step;
    if (!(s > lo) || !(s < hi)) {
      s = 0.5 * (lo + hi);
    }
  }
  return s;
}

double BezierQuinticSegment::eval(double t, int order) const
{
  check_window(t, t_start_, t_end());
  const double s = param_for_time(t);
  double ty[4];
  double yy[4];
  bernstein5(ctrl_t_, s, ty);
  bernstein5(ctrl_y_, s, yy);
  const double ts = ty[1], tss = ty[2], tsss = ty[3];
  const double ys = yy[1], yss = yy[2], ysss = yy[3];
  switch (order) {
    case 0:
      return yy[0];
    case 1:
      return ys / ts;
    case 2:
      return (yss * ts - ys * tss) / (ts * ts * ts);
    case 3: {
      const double ts2 = ts * ts;
      return (ysss * ts2 - 3.0 * yss * ts * tss + 3.0 * ys * tss * tss - ys * ts * tsss) /
             (ts2 * ts2 * ts);
    }
    default:
      throw std::domain_error("BezierQuinticSegment::eval: order must be 0..3");
  }
}

BSplineSegment::BSplineSegment(double y_from, double y_to, double duration, double t_start,
                               int levels)
: t_start_(t_start), duration_(duration)
{
  if (!(duration > 0.0)) {
    throw std::domain_error("BSplineSegment: duration must be positive");
  }
  if (levels < 4) {
    throw std::domain_error("BSplineSegment: need at least 4 control levels");
  }
  // Uniformly spaced levels with tripled end controls: rest at both ends.
  for (int rep = 0; rep < 2; ++rep) controls_.push_back(y_from);
  for (int i = 0; i < levels; ++i) {
    controls_.push_back(y_from +
                        (y_to - y_from) * static_cast<double>(i) / (levels - 1));
  }
  for (int rep = 0; rep < 2; ++rep) controls_.push_back(y_to);

  constexpr int kDegree = 3;
  const std::size_t n = controls_.size();
  const std::size_t spans = n - kDegree;  // clamped uniform knot spans
  for (int i = 0; i <= kDegree; ++i) knots_.push_back(0.0);
  for (std::size_t i = 1; i < spans; ++i) {
    knots_.push_back(static_cast<double>(i) / static_cast<double>(spans));
  }
  for (int i = 0; i <= kDegree; ++i) knots_.push_back(1.0);
}

double BSplineSegment::eval(double t, int order) const
{
  check_window(t, t_start_, t_end());
  if (order < 0 || order > 3) {
    throw std::domain_error("BSplineSegment::eval: order must be 0..3");
  }
  constexpr int p = 3;
  const double u = std::clamp((t - t_start_) / duration_, 0.0, 1.0);

  // Knot span index (last span is closed on the right).
  const std::size_t n = controls_.size();
  std::size_t span = p;
  while (span < n - 1 && u >= knots_[span + 1]) {
    ++span;
  }

  // Cox-de Boor basis values and derivatives (The NURBS Book, A2.3).
  double ndu[p + 1][p + 1];
  double left[p + 1], right[p + 1];
  ndu[0][0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = u - knots_[span + 1 - j];
    right[j] = knots_[span + j] - u;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu[j][r] = right[r + 1] + left[j - r];
      const double temp = ndu[r][j - 1] / ndu[j][r];
      ndu[r][j] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu[j][j] = saved;
  }

  double ders[4][p + 1];
  for (int j = 0; j <= p; ++j) ders[0][j] = ndu[j][p];
  double a[2][p + 1];
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a[0][0] = 1.0;
    for (int k = 1; k <= order; ++k) {
      double d = 0.0;
      const int rk = r - k, pk = p - k;
      if (r >= k) {
        a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
        d = a[s2][0] * ndu[rk][pk];
      }
      const int j1 = (rk >= -1) ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
        d += a[s2][j] * ndu[rk + j][pk];
      }
      if (r <= pk) {
        a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
        d += a[s2][k] * ndu[r][pk];
      }
      ders[k][r] = d;
      std::swap(s1, s2);
    }
  }
  double factor = 1.0;
  for (int k = 1; k <= order; ++k) factor *= static_cast<double>(p - k + 1);

  double value = 0.0;
  for (int j = 0; j <= p; ++j) {
    value += ders[order][j] * controls_[span - p + j];
  }
  if (order > 0) {
    value *= factor / std::pow(duration_, order);
  }
  return value;
}

}  // namespace dqplan
