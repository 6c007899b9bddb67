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

#include "dqplan/safety.hpp"

#include <cmath>
#include <stdexcept>

#include "dqplan/kernels.hpp"

namespace dqplan {

void SafetyParams::validate() const
{
  if (!(t_safe > 0.0)) {
    throw std::domain_error("SafetyParams: t_safe must be positive");
  }
  if (!(safe_distance >= 0.0)) {
    throw std::domain_error("SafetyParams: safe_distance must be non-negative");
  }
  for (std::size_t i = 0; i < ttc_thresholds.size(); ++i) {
    if (!(ttc_thresholds[i] > 0.0)) {
      throw std::domain_error("SafetyParams: ttc_thresholds must be positive");
    }
    if (i > 0 && !(ttc_thresholds[i] < ttc_thresholds[i - 1])) {
      throw std::domain_error("SafetyParams: ttc_thresholds must be descending");
    }
  }
}

double gap(const PlanarPoint & ego, const PlanarPoint & obs)
{
  return std::hypot(obs.x - ego.x, obs.y - ego.y);
}

TTCSample ttc(const PathSample & ego, const PathSample & obs, double t)
{
  TTCSample out;
  out.t = t;
  const double rx = obs.x - ego.x;
  const double ry = obs.y - ego.y;
  out.gap = std::hypot(rx, ry);
  if (out.gap <= 0.0) {
    out.closing_speed = 0.0;
    out.ttc = 0.0;
    return out;
  }
  out.closing_speed = -(rx * (obs.vx - ego.vx) + ry * (obs.vy - ego.vy)) / out.gap;
  out.ttc = out.closing_speed > 0.0 ? out.gap / out.closing_speed : kInfiniteTtc;
  return out;
}

double ttc_penalty(double ttc_value, double t_safe, bool normalized)
{
  if (!(t_safe > 0.0)) {
    throw std::domain_error("ttc_penalty: t_safe must be positive");
  }
  if (ttc_value >= t_safe) {
    return 0.0;
  }
  const double deficit = t_safe - ttc_value;
  const double d = normalized ? deficit / t_safe : deficit;
  return d * d;
}

double ttc_cost(const ManeuverPlan & plan, std::span<const ObstacleTrack> tracks,
                const SafetyParams & params, double dt)
{
  if (!(dt > 0.0)) {
    throw std::domain_error("ttc_cost: dt must be positive");
  }
  params.validate();
  const double t0 = plan.start_time();
  const auto n = static_cast<std::size_t>(
    std::floor((plan.end_time() - t0) / dt + 1e-9));
  if (n == 0 || tracks.empty()) {
    return 0.0;
  }

  // Ego samples at t0 + k*dt, k = 1..n.
  std::vector<double> ey(n), evy(n), ex(n), evx(n, plan.speed());
  plan.sample(t0 + dt, dt, n, ey.data(), evy.data(), nullptr, nullptr);
  for (std::size_t k = 0; k < n; ++k) {
    ex[k] = plan.speed() * (t0 + static_cast<double>(k + 1) * dt);
  }

  std::vector<double> ox(n), oy(n), ovx(n), ovy(n);
  const auto & ops = kernels::active();
  double total = 0.0;
  for (const ObstacleTrack & track : tracks) {
    for (std::size_t k = 0; k < n; ++k) {
      const PathSample s = track.state_at(t0 + static_cast<double>(k + 1) * dt);
      ox[k] = s.x;
      oy[k] = s.y;
      ovx[k] = s.vx;
      ovy[k] = s.vy;
    }
    total += ops.ttc_penalty_sum(ex.data(), ey.data(), evx.data(), evy.data(), ox.data(),
                                 oy.data(), ovx.data(), ovy.data(), n, params.t_safe,
                                 params.normalized_penalty) *
             dt;
  }
  return total;
}

}  // namespace dqplan
