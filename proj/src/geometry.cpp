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

#include "dqplan/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dqplan {

LaneModel::LaneModel(double lane_width, std::vector<double> lane_centers)
: lane_width_(lane_width), lane_centers_(std::move(lane_centers))
{
  if (!(lane_width_ > 0.0) || !std::isfinite(lane_width_)) {
    throw std::domain_error("LaneModel: lane_width must be positive");
  }
  if (lane_centers_.empty()) {
    throw std::domain_error("LaneModel: at least one lane center required");
  }
  constexpr double kSpacingTol = 1e-9;
  for (std::size_t i = 0; i < lane_centers_.size(); ++i) {
    if (!std::isfinite(lane_centers_[i])) {
      throw std::domain_error("LaneModel: lane centers must be finite");
    }
    if (i > 0) {
      const double spacing = lane_centers_[i] - lane_centers_[i - 1];
      if (spacing <= 0.0) {
        throw std::domain_error("LaneModel: lane centers must be strictly increasing");
      }
      if (std::fabs(spacing - lane_width_) > kSpacingTol * std::max(1.0, lane_width_)) {
        throw std::domain_error("LaneModel: adjacent center spacing must equal lane_width");
      }
    }
  }
}

std::pair<double, double> lane_boundaries(const LaneModel & lane, std::size_t lane_index)
{
  if (lane_index >= lane.lane_count()) {
    throw std::domain_error("lane_boundaries: lane_index " + std::to_string(lane_index) +
                            " out of range");
  }
  const double c = lane.lane_centers()[lane_index];
  const double half = 0.5 * lane.lane_width();
  return {c + half, c - half};
}

OffsetCurves offset_boundaries(std::span<const PathSample> path, double width, double eps)
{
  if (path.size() < 2) {
    throw std::domain_error("offset_boundaries: need at least 2 path samples");
  }
  if (!(eps > 0.0)) {
    throw std::domain_error("offset_boundaries: eps must be positive");
  }
  OffsetCurves out;
  out.left.reserve(path.size());
  out.right.reserve(path.size());
  for (const PathSample & s : path) {
    if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.vx) ||
        !std::isfinite(s.vy)) {
      throw std::domain_error("offset_boundaries: non-finite path sample");
    }
    const double inv_norm = 1.0 / std::sqrt(s.vx * s.vx + s.vy * s.vy + eps);
    const double nx = -s.vy * inv_norm;
    const double ny = s.vx * inv_norm;
    out.left.push_back({s.x + width * nx, s.y + width * ny});
    out.right.push_back({s.x - width * nx, s.y - width * ny});
  }
  return out;
}

}  // namespace dqplan
