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

#include "dqplan/cost.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "dqplan/kernels.hpp"

namespace dqplan {
namespace {

std::size_t steps_in(double t0, double t_end, double dt)
{
  if (!(dt > 0.0)) {
    throw std::domain_error("cost: dt must be positive");
  }
  if (!(t_end > t0)) {
    throw std::domain_error("cost: empty evaluation window");
  }
  return static_cast<std::size_t>(std::floor((t_end - t0) / dt + 1e-9));
}

double bounds_from_samples(const double * ay, const double * jy, std::size_t count,
                           const ActuationLimits & limits, const CostWeights & weights,
                           double speed)
{
  const auto & ops = kernels::active();
  const double v2 = speed * speed;
  // |kappa| = |a_y|/v^2 exceeds kappa_max exactly when |a_y| exceeds
  // kappa_max*v^2; rescale the squared excess accordingly.
  const double kappa_term =
    ops.hinge_sq_sum(ay, count, limits.kappa_max() * v2) / (v2 * v2);
  return weights.lambda3 * ops.hinge_sq_sum(ay, count, limits.a_y_max) +
         weights.lambda4 * ops.hinge_sq_sum(jy, count, limits.j_y_max) +
         weights.lambda5 * kappa_term;
}

}  // namespace

void CostWeights::validate() const
{
  for (double w : {lambda1, lambda2, lambda3, lambda4, lambda5}) {
    if (w < 0.0 || !std::isfinite(w)) {
      throw std::domain_error("CostWeights: weights must be non-negative and finite");
    }
  }
  if (lambda1 > 0.0) {
    const double ratio = lambda2 / lambda1;
    if (ratio < 0.01 || ratio > 10.0) {
      std::fprintf(stderr,
                   "dqplan: warning: lambda2/lambda1 = %.3g outside [0.01, 10]; "
                   "expect ill-conditioned optimization\n",
                   ratio);
    }
  }
}

double ActuationLimits::kappa_max() const { return std::tan(delta_max) / wheelbase; }

void ActuationLimits::validate() const
{
  if (!(a_y_max > 0.0) || !(j_y_max > 0.0) || !(delta_max > 0.0) || !(wheelbase > 0.0)) {
    throw std::domain_error("ActuationLimits: all limits must be strictly positive");
  }
}

double smoothness_cost(const ManeuverPlan & plan, double dt, bool accel_form)
{
  const std::size_t n = steps_in(plan.start_time(), plan.end_time(), dt);
  if (n + 1 < 4) {
    throw std::domain_error("smoothness_cost: plan horizon must cover at least 4 samples");
  }
  if (accel_form) {
    std::vector<double> ay(n + 1);
    plan.sample(plan.start_time(), dt, n + 1, nullptr, nullptr, ay.data(), nullptr);
    double acc = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      acc += ay[k] * ay[k];
    }
    return acc * dt;
  }
  std::vector<double> y(n + 1);
  plan.sample(plan.start_time(), dt, n + 1, y.data(), nullptr, nullptr, nullptr);
  const double dt5 = dt * dt * dt * dt * dt;
  return kernels::active().third_diff_sq_sum(y.data(), n + 1) / dt5;
}

double bounds_cost(const ManeuverPlan & plan, const ActuationLimits & limits,
                   const CostWeights & weights, double dt)
{
  limits.validate();
  const std::size_t n = steps_in(plan.start_time(), plan.end_time(), dt);
  std::vector<double> ay(n + 1), jy(n + 1);
  plan.sample(plan.start_time(), dt, n + 1, nullptr, nullptr, ay.data(), jy.data());
  return bounds_from_samples(ay.data(), jy.data(), n + 1, limits, weights, plan.speed());
}

CostBreakdown total_cost(const ManeuverPlan & plan, std::span<const ObstacleTrack> tracks,
                         const SafetyParams & safety, const CostWeights & weights,
                         const ActuationLimits & limits, double dt)
{
  weights.validate();
  CostBreakdown out;
  out.smooth = smoothness_cost(plan, dt, weights.accel_smoothness);
  out.ttc = ttc_cost(plan, tracks, safety, dt);
  out.bounds = bounds_cost(plan, limits, weights, dt);
  out.total = weights.lambda1 * out.smooth + weights.lambda2 * out.ttc + out.bounds;
  return out;
}

CostEvaluator::CostEvaluator(std::span<const ObstacleTrack> tracks, const SafetyParams & safety,
                             const CostWeights & weights, const ActuationLimits & limits,
                             double t0, double t_end, double dt)
: safety_(safety), weights_(weights), limits_(limits), t0_(t0), t_end_(t_end), dt_(dt)
{
  safety_.validate();
  weights_.validate();
  limits_.validate();
  n_ = steps_in(t0, t_end, dt);
  if (n_ + 1 < 4) {
    throw std::domain_error("CostEvaluator: window must cover at least 4 samples");
  }
  obstacles_.reserve(tracks.size());
  for (const ObstacleTrack & track : tracks) {
    std::array<std::vector<double>, 4> arrays;
    for (auto & a : arrays) {
      a.resize(n_);
    }
    for (std::size_t k = 0; k < n_; ++k) {
      const PathSample s = track.state_at(t0 + static_cast<double>(k + 1) * dt);
      arrays[0][k] = s.x;
      arrays[1][k] = s.y;
      arrays[2][k] = s.vx;
      arrays[3][k] = s.vy;
    }
    obstacles_.push_back(std::move(arrays));
  }
  ex_.resize(n_);
  y_.resize(n_ + 1);
  vy_.resize(n_ + 1);
  ay_.resize(n_ + 1);
  jy_.resize(n_ + 1);
}

CostBreakdown CostEvaluator::evaluate(const ManeuverPlan & plan)
{
  constexpr double kWindowTol = 1e-6;
  if (std::fabs(plan.start_time() - t0_) > kWindowTol || plan.end_time() < t_end_ - kWindowTol) {
    throw std::domain_error("CostEvaluator: plan window does not match evaluation window");
  }
  plan.sample(t0_, dt_, n_ + 1, y_.data(), vy_.data(), ay_.data(), jy_.data());

  const auto & ops = kernels::active();
  const double dt5 = dt_ * dt_ * dt_ * dt_ * dt_;

  CostBreakdown out;
  if (weights_.accel_smoothness) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= n_; ++k) {
      acc += ay_[k] * ay_[k];
    }
    out.smooth = acc * dt_;
  } else {
    out.smooth = ops.third_diff_sq_sum(y_.data(), n_ + 1) / dt5;
  }
  out.bounds = bounds_from_samples(ay_.data(), jy_.data(), n_ + 1, limits_, weights_,
                                   plan.speed());
  const double speed = plan.speed();
  for (std::size_t k = 0; k < n_; ++k) {
    ex_[k] = speed * (t0_ + static_cast<double>(k + 1) * dt_);
  }
  std::vector<double> evx(n_, speed);
  for (const auto & obs : obstacles_) {
    out.ttc += ops.ttc_penalty_sum(ex_.data(), y_.data() + 1, evx.data(), vy_.data() + 1,
                                   obs[0].data(), obs[1].data(), obs[2].data(), obs[3].data(),
                                   n_, safety_.t_safe, safety_.normalized_penalty) *
               dt_;
  }
  out.total = weights_.lambda1 * out.smooth + weights_.lambda2 * out.ttc + out.bounds;
  return out;
}

bool ParamBox::contains(std::span<const double> p, double slack) const
{
  if (p.size() != lower.size()) {
    return false;
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < lower[i] - slack || p[i] > upper[i] + slack) {
      return false;
    }
  }
  return true;
}

std::vector<double> ParamBox::clamp(std::span<const double> p) const
{
  std::vector<double> out(p.begin(), p.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::clamp(out[i], lower[i], upper[i]);
  }
  return out;
}

std::vector<double> cost_gradient(const PlanBuilder & builder, const ParamBox & box,
                                  CostEvaluator & evaluator, std::span<const double> params)
{
  if (!box.contains(params)) {
    throw std::domain_error("cost_gradient: parameters outside the feasible box");
  }
  std::vector<double> grad(params.size());
  std::vector<double> p(params.begin(), params.end());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double h = 1e-6 * std::max(1.0, std::fabs(p[i]));
    const double saved = p[i];
    p[i] = saved + h;
    const double plus = evaluator.evaluate(builder(p)).total;
    p[i] = saved - h;
    const double minus = evaluator.evaluate(builder(p)).total;
    p[i] = saved;
    grad[i] = (plus - minus) / (2.0 * h);
  }
  return grad;
}

std::array<double, 3> ttc_cost_junction_gradient(double delta_y_total, double duration,
                                                 const JunctionState & junction, double speed,
                                                 std::span<const ObstacleTrack> tracks,
                                                 const SafetyParams & params, double dt)
{
  params.validate();
  const std::size_t n = steps_in(0.0, duration, dt);

  const ManeuverPlan base =
    double_lane_change(delta_y_total, junction, duration, speed, duration);

  // The lateral profile is linear in (y_s, v_s, a_s): sensitivities are the
  // zero-endpoint plans with a unit junction component.
  std::array<ManeuverPlan, 3> sensitivity = {
    double_lane_change(0.0, {junction.t_s, 1.0, 0.0, 0.0}, duration, speed, duration),
    double_lane_change(0.0, {junction.t_s, 0.0, 1.0, 0.0}, duration, speed, duration),
    double_lane_change(0.0, {junction.t_s, 0.0, 0.0, 1.0}, duration, speed, duration)};

  std::array<double, 3> grad{0.0, 0.0, 0.0};
  const double inv_scale2 =
    params.normalized_penalty ? 1.0 / (params.t_safe * params.t_safe) : 1.0;

  for (std::size_t k = 1; k <= n; ++k) {
    const double t = static_cast<double>(k) * dt;
    const PathSample ego = base.state(t);
    for (const ObstacleTrack & track : tracks) {
      const PathSample obs = track.state_at(t);
      const TTCSample sample = ttc(ego, obs, t);
      if (!(sample.ttc < params.t_safe) || sample.gap <= 0.0) {
        continue;
      }
      const double g = sample.gap;
      const double c = sample.closing_speed;
      const double ry = obs.y - ego.y;
      const double wy = obs.vy - ego.vy;
      const double dphi = -2.0 * (params.t_safe - sample.ttc) * inv_scale2;
      for (int i = 0; i < 3; ++i) {
        const double sigma = sensitivity[i].lateral(t, 0);
        const double sigma_dot = sensitivity[i].lateral(t, 1);
        const double dg = -ry * sigma / g;
        const double dc = (sigma * wy + ry * sigma_dot) / g - c * dg / g;
        const double dttc = (dg * c - g * dc) / (c * c);
        grad[i] += dphi * dttc * dt;
      }
    }
  }
  return grad;
}

}  // namespace dqplan
