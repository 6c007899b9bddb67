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

#ifndef DQPLAN_TRAFFIC_HPP_
#define DQPLAN_TRAFFIC_HPP_

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqplan/geometry.hpp"
#include "dqplan/maneuver.hpp"

namespace dqplan {

enum class TrackKind { kConstant, kDelayedOffset, kBraking, kOscillating, kReplay };

/// A surrounding vehicle's motion, sampled on a uniform grid over
/// [0, horizon]. Immutable after construction.
class ObstacleTrack {
 public:
  ObstacleTrack(std::string id, TrackKind kind, double dt, std::vector<double> x,
                std::vector<double> y, std::vector<double> vx, std::vector<double> vy);

  const std::string & id() const { return id_; }
  TrackKind kind() const { return kind_; }
  double dt() const { return dt_; }
  std::size_t size() const { return x_.size(); }
  double horizon() const { return dt_ * static_cast<double>(size() - 1); }

  const std::vector<double> & x() const { return x_; }
  const std::vector<double> & y() const { return y_; }
  const std::vector<double> & vx() const { return vx_; }
  const std::vector<double> & vy() const { return vy_; }

  // Linear interpolation between stored samples; time clamped to [0, horizon].
  PathSample state_at(double t) const;

 private:
  std::string id_;
  TrackKind kind_;
  double dt_;
  std::vector<double> x_, y_, vx_, vy_;
};

/// Constant-velocity vehicle. `lateral_speed` extends the longitudinal-only
/// form for crossing traffic (e.g. the unsignalized-intersection scenario);
/// it defaults to zero.
ObstacleTrack constant_track(const std::string & id, double x0, double y0, double speed,
                             double horizon, double dt, double lateral_speed = 0.0);

/// Ego trajectory shifted by a time delay tau and a lateral offset delta;
/// past the ego plan's end the terminal lateral state is extrapolated.
ObstacleTrack delayed_offset_track(const std::string & id, const ManeuverPlan & ego,
                                   double tau, double delta, double horizon, double dt);

/// Speed ramps v0 -> v_floor at `decel`, then holds; positions integrate the
/// piecewise-quadratic profile exactly.
ObstacleTrack braking_track(const std::string & id, double x0, double y0, double v0,
                            double decel, double v_floor, double horizon, double dt);

/// v(t) = v_mean + v_amp * sin(2 pi t / period), integrated in closed form.
ObstacleTrack oscillating_track(const std::string & id, double x0, double y0, double v_mean,
                                double v_amp, double period, double horizon, double dt);

struct ReplaySample {
  double t, x, y;
};

/// Similarity transform applied to replayed samples before smoothing:
/// p' = scale * R(rotation) * p + (tx, ty).
struct ReplayTransform {
  double scale{1.0};
  double rotation{0.0};  // [rad]
  double tx{0.0};
  double ty{0.0};
};

class ReplayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strict CSV ingestion, header `t,x,y`; rejects NaN/inf and non-monotone
/// time, reporting the offending line number.
std::vector<ReplaySample> read_replay_csv(std::istream & in, const std::string & source);
std::vector<ReplaySample> read_replay_csv_file(const std::string & path);

/// Transform, smooth (centered moving average of width `smoothing_window`
/// samples, window shrunk symmetrically at the ends), then resample to the
/// simulation grid; velocities by central differences. Outside the data's
/// time range the end samples are held.
ObstacleTrack replay_track(const std::string & id, const std::vector<ReplaySample> & samples,
                           const ReplayTransform & transform, int smoothing_window,
                           double horizon, double dt);

}  // namespace dqplan

#endif  // DQPLAN_TRAFFIC_HPP_
