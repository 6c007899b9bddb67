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

#ifndef DQPLAN_SIM_LOG_HPP_
#define DQPLAN_SIM_LOG_HPP_

#include <string>
#include <vector>

namespace dqplan {

/// One simulation step: ego kinematics plus per-obstacle safety signals.
/// Positions are world-frame.
struct StepRecord {
  double t{0.0};
  double x{0.0};
  double y{0.0};
  double vy{0.0};
  double ay{0.0};
  double jy{0.0};
  double curvature{0.0};        // signed, exact planar formula
  std::vector<double> gaps;     // [m] per obstacle
  std::vector<double> ttcs;     // [s] per obstacle, +inf when not closing
  bool replanned{false};
};

struct ReplanEvent {
  double t{0.0};
  std::string reason;
  int iterations{0};
  double cost_before{0.0};
  double cost_after{0.0};
};

struct SimLog {
  std::string scenario;
  std::string planner;
  double dt{0.05};
  double speed{15.0};
  std::vector<std::string> obstacle_ids;
  std::vector<StepRecord> steps;
  std::vector<ReplanEvent> replans;
  bool final_risky{false};
};

}  // namespace dqplan

#endif  // DQPLAN_SIM_LOG_HPP_
