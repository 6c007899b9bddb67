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

#ifndef DQPLAN_METRICS_HPP_
#define DQPLAN_METRICS_HPP_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dqplan/safety.hpp"
#include "dqplan/sim_log.hpp"

namespace dqplan {

/// Safety / comfort / efficiency figures of one rollout. Per-step values are
/// reduced over the minimum across obstacles.
struct MetricSummary {
  double min_ttc{kInfiniteTtc};
  int ttc_violation_count{0};  // steps with min ttc < t_safe (strict)
  double min_gap{kInfiniteTtc};
  double avg_gap{0.0};
  // (threshold, fraction of steps below threshold), thresholds descending.
  std::vector<std::pair<double, double>> ttc_below_fractions;
  double max_curvature{0.0};   // |kappa| [1/m]
  double avg_curvature{0.0};
  double max_lateral_jerk{0.0};
  double rms_lateral_jerk{0.0};
  double avg_abs_lateral_jerk{0.0};
  double longitudinal_distance{0.0};  // [m] ego progress during the maneuver
  double total_time{0.0};             // [s] maneuver completion time

  double fraction_below(double threshold) const;
};

MetricSummary summarize(const SimLog & log, const SafetyParams & params);

/// Aligned comparison with signed percentage deltas against the first entry
/// ((new - old)/old).
struct ComparisonTable {
  std::vector<std::string> entries;       // planner / variant names
  std::vector<std::string> metric_names;
  std::vector<std::vector<double>> values;  // [metric][entry]
  std::vector<std::vector<double>> deltas;  // [metric][entry], NaN for entry 0 or undefined
};

ComparisonTable compare(std::span<const std::pair<std::string, MetricSummary>> summaries);

std::string to_csv(const ComparisonTable & table);
std::string to_text(const ComparisonTable & table);

}  // namespace dqplan

#endif  // DQPLAN_METRICS_HPP_
