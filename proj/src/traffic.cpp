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

#include "dqplan/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>

namespace dqplan {
namespace {

std::size_t grid_size(double horizon, double dt)
{
  if (!(dt > 0.0) || !(horizon > 0.0)) {
    throw std::domain_error("track: horizon and dt must be positive");
  }
  return static_cast<std::size_t>(std::floor(horizon / dt + 1e-9)) + 1;
}

}  // namespace

ObstacleTrack::ObstacleTrack(std::string id, TrackKind kind, double dt, std::vector<double> x,
                             std::vector<double> y, std::vector<double> vx,
                             std::vector<double> vy)
: id_(std::move(id)), kind_(kind), dt_(dt), x_(std::move(x)), y_(std::move(y)),
  vx_(std::move(vx)), vy_(std::move(vy))
{
  if (x_.size() < 2 || x_.size() != y_.size() || x_.size() != vx_.size() ||
      x_.size() != vy_.size()) {
    throw std::domain_error("ObstacleTrack: inconsistent sample arrays");
  }
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i]) || !std::isfinite(y_[i]) || !std::isfinite(vx_[i]) ||
        !std::isfinite(vy_[i])) {
      throw std::domain_error("ObstacleTrack: non-finite sample");
    }
  }
}

PathSample ObstacleTrack::state_at(double t) const
{
  const double u = std::clamp(t / dt_, 0.0, static_cast<double>(size() - 1));
  const auto i = static_cast<std::size_t>(u);
  const std::size_t j = std::min(i + 1, size() - 1);
  const double w = u - static_cast<double>(i);
  PathSample s;
  s.x = x_[i] + w * (x_[j] - x_[i]);
  s.y = y_[i] + w * (y_[j] - y_[i]);
  s.vx = vx_[i] + w * (vx_[j] - vx_[i]);
  s.vy = vy_[i] + w * (vy_[j] - vy_[i]);
  return s;
}

ObstacleTrack constant_track(const std::string & id, double x0, double y0, double speed,
                             double horizon, double dt, double lateral_speed)
{
  const std::size_t n = grid_size(horizon, dt);
  std::vector<double> x(n), y(n), vx(n, speed), vy(n, lateral_speed);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * dt;
    x[k] = x0 + speed * t;
    y[k] = y0 + lateral_speed * t;
  }
  return ObstacleTrack(id, TrackKind::kConstant, dt, std::move(x), std::move(y), std::move(vx),
                       std::move(vy));
}

ObstacleTrack delayed_offset_track(const std::string & id, const ManeuverPlan & ego,
                                   double tau, double delta, double horizon, double dt)
{
  if (tau < 0.0) {
    throw std::domain_error("delayed_offset_track: tau must be non-negative");
  }
  const std::size_t n = grid_size(horizon, dt);
  std::vector<double> x(n), y(n), vx(n), vy(n);
  const double t_end = ego.end_time();
  const double y_end = ego.lateral(t_end, 0);
  const double vy_end = ego.lateral(t_end, 1);
  for (std::size_t k = 0; k < n; ++k) {
    const double tq = static_cast<double>(k) * dt + tau;
    x[k] = ego.speed() * tq;  // x = v t holds beyond the lateral plan
    vx[k] = ego.speed();
    if (tq <= t_end) {
      y[k] = ego.lateral(tq, 0) + delta;
      vy[k] = ego.lateral(tq, 1);
    } else {
      y[k] = y_end + vy_end * (tq - t_end) + delta;
      vy[k] = vy_end;
    }
  }
  return ObstacleTrack(id, TrackKind::kDelayedOffset, dt, std::move(x), std::move(y),
                       std::move(vx), std::move(vy));
}

ObstacleTrack braking_track(const std::string & id, double x0, double y0, double v0,
                            double decel, double v_floor, double horizon, double dt)
{
  if (decel < 0.0 || v_floor < 0.0 || v_floor > v0) {
    throw std::domain_error("braking_track: require decel >= 0 and 0 <= v_floor <= v0");
  }
  const std::size_t n = grid_size(horizon, dt);
  const double t_ramp = decel > 0.0 ? (v0 - v_floor) / decel : 0.0;
  std::vector<double> x(n), y(n, y0), vx(n), vy(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (decel <= 0.0 || t_ramp <= 0.0) {
      vx[k] = v0;
      x[k] = x0 + v0 * t;
    } else if (t <= t_ramp) {
      vx[k] = v0 - decel * t;
      x[k] = x0 + v0 * t - 0.5 * decel * t * t;
    } else {
      vx[k] = v_floor;
      x[k] = x0 + v0 * t_ramp - 0.5 * decel * t_ramp * t_ramp + v_floor * (t - t_ramp);
    }
  }
  return ObstacleTrack(id, TrackKind::kBraking, dt, std::move(x), std::move(y), std::move(vx),
                       std::move(vy));
}

ObstacleTrack oscillating_track(const std::string & id, double x0, double y0, double v_mean,
                                double v_amp, double period, double horizon, double dt)
{
  if (!(period > 0.0) || v_amp < 0.0 || v_amp > v_mean) {
    throw std::domain_error("oscillating_track: require period > 0 and 0 <= v_amp <= v_mean");
  }
  const std::size_t n = grid_size(horizon, dt);
  const double omega = 2.0 * std::numbers::pi / period;
  std::vector<double> x(n), y(n, y0), vx(n), vy(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * dt;
    vx[k] = v_mean + v_amp * std::sin(omega * t);
    x[k] = x0 + v_mean * t + v_amp / omega * (1.0 - std::cos(omega * t));
  }
  return ObstacleTrack(id, TrackKind::kOscillating, dt, std::move(x), std::move(y),
                       std::move(vx), std::move(vy));
}

std::vector<ReplaySample> read_replay_csv(std::istream & in, const std::string & source)
{
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string & what) {
    throw ReplayError(source + ":" + std::to_string(line_no) + ": " + what);
  };

  if (!std::getline(in, line)) {
    ++line_no;
    fail("empty replay file");
  }
  ++line_no;
  // Tolerate surrounding whitespace and an optional UTF-8 BOM in the header.
  std::string header = line;
  if (header.size() >= 3 && header.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    header.erase(0, 3);
  }
  header.erase(std::remove_if(header.begin(), header.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               header.end());
  if (header != "t,x,y") {
    fail("expected header 't,x,y', got '" + line + "'");
  }

  std::vector<ReplaySample> samples;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    std::istringstream row(line);
    ReplaySample s{};
    char c1 = 0, c2 = 0;
    if (!(row >> s.t >> c1 >> s.x >> c2 >> s.y) || c1 != ',' || c2 != ',') {
      fail("malformed row '" + line + "'");
    }
    std::string rest;
    if (row >> rest) {
      fail("trailing data '" + rest + "'");
    }
    if (!std::isfinite(s.t) || !std::isfinite(s.x) || !std::isfinite(s.y)) {
      fail("non-finite value");
    }
    if (!samples.empty() && !(s.t > samples.back().t)) {
      fail("time must be strictly increasing");
    }
    samples.push_back(s);
  }
  if (samples.size() < 2) {
    fail("need at least 2 samples");
  }
  return samples;
}

std::vector<ReplaySample> read_replay_csv_file(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ReplayError(path + ": cannot open replay file");
  }
  return read_replay_csv(in, path);
}

ObstacleTrack replay_track(const std::string & id, const std::vector<ReplaySample> & samples,
                           const ReplayTransform & transform, int smoothing_window,
                           double horizon, double dt)
{
  if (samples.size() < 2) {
    throw std::domain_error("replay_track: need at least 2 samples");
  }
  if (smoothing_window < 1) {
    throw std::domain_error("replay_track: smoothing_window must be >= 1");
  }

  const double cr = std::cos(transform.rotation);
  const double sr = std::sin(transform.rotation);
  std::vector<double> ts(samples.size()), xs(samples.size()), ys(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    ts[i] = samples[i].t;
    xs[i] = transform.scale * (cr * samples[i].x - sr * samples[i].y) + transform.tx;
    ys[i] = transform.scale * (sr * samples[i].x + cr * samples[i].y) + transform.ty;
  }

  // Centered moving average; half-width shrinks near the ends so the window
  // stays symmetric.
  const int half = (smoothing_window - 1) / 2;
  auto smooth = [&](const std::vector<double> & v) {
    std::vector<double> out(v.size());
    const auto n = static_cast<int>(v.size());
    for (int i = 0; i < n; ++i) {
      const int h = std::min({half, i, n - 1 - i});
      double acc = 0.0;
      for (int j = i - h; j <= i + h; ++j) {
        acc += v[j];
      }
      out[i] = acc / static_cast<double>(2 * h + 1);
    }
    return out;
  };
  const std::vector<double> sx = smooth(xs);
  const std::vector<double> sy = smooth(ys);

  // Linear resampling onto the simulation grid, end samples held outside
  // the data range.
  const std::size_t n = grid_size(horizon, dt);
  std::vector<double> x(n), y(n), vx(n), vy(n);
  auto interp = [&](const std::vector<double> & v, double t) {
    if (t <= ts.front()) return v.front();
    if (t >= ts.back()) return v.back();
    const auto it = std::upper_bound(ts.begin(), ts.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - ts.begin());
    const double w = (t - ts[j - 1]) / (ts[j] - ts[j - 1]);
    return v[j - 1] + w * (v[j] - v[j - 1]);
  };
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * dt;
    x[k] = interp(sx, t);
    y[k] = interp(sy, t);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t a = k > 0 ? k - 1 : 0;
    const std::size_t b = std::min(k + 1, n - 1);
    const double span = static_cast<double>(b - a) * dt;
    vx[k] = (x[b] - x[a]) / span;
    vy[k] = (y[b] - y[a]) / span;
  }
  return ObstacleTrack(id, TrackKind::kReplay, dt, std::move(x), std::move(y), std::move(vx),
                       std::move(vy));
}

}  // namespace dqplan
