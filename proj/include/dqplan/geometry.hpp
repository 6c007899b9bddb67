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

#ifndef DQPLAN_GEOMETRY_HPP_
#define DQPLAN_GEOMETRY_HPP_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace dqplan {

struct PlanarPoint {
  double x{0.0};  // [m] longitudinal
  double y{0.0};  // [m] lateral
};

/// One kinematic sample of a planar trajectory.
struct PathSample {
  double x{0.0};
  double y{0.0};
  double vx{0.0};
  double vy{0.0};
};

/// Straight multi-lane road: parallel centerlines at fixed lateral offsets.
class LaneModel {
 public:
  // Centers must be strictly increasing with adjacent spacing equal to the
  // lane width; throws std::domain_error otherwise.
  LaneModel(double lane_width, std::vector<double> lane_centers);

  double lane_width() const { return lane_width_; }
  const std::vector<double> & lane_centers() const { return lane_centers_; }
  std::size_t lane_count() const { return lane_centers_.size(); }

 private:
  double lane_width_;
  std::vector<double> lane_centers_;
};

/// (left, right) boundary offsets of one lane: center +/- width/2.
std::pair<double, double> lane_boundaries(const LaneModel & lane, std::size_t lane_index);

struct OffsetCurves {
  std::vector<PlanarPoint> left;
  std::vector<PlanarPoint> right;
};

/// Boundary curves obtained by offsetting a sampled path along its unit
/// normal n = (-vy, vx)/sqrt(vx^2 + vy^2 + eps). The regularizer keeps the
/// normal bounded at standstill samples.
OffsetCurves offset_boundaries(std::span<const PathSample> path, double width,
                               double eps = 1e-9);

}  // namespace dqplan

#endif  // DQPLAN_GEOMETRY_HPP_
