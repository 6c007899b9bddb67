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

#ifndef DQPLAN_SCENARIO_IO_HPP_
#define DQPLAN_SCENARIO_IO_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dqplan/metrics.hpp"
#include "dqplan/simulation.hpp"

namespace dqplan {

/// Scenario/variants file problem; the message carries the offending field
/// path or parse location.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `base_dir` resolves relative replay CSV paths.
ScenarioConfig scenario_from_json(const nlohmann::json & doc,
                                  const std::string & base_dir = "");
ScenarioConfig load_scenario_file(const std::string & path);

std::vector<AblationVariant> variants_from_json(const nlohmann::json & doc);
std::vector<AblationVariant> load_variants_file(const std::string & path);

// Deterministic exports; +inf renders as "inf" in CSV and null in JSON.
std::string sim_log_to_csv(const SimLog & log);
nlohmann::json sim_log_to_json(const SimLog & log);
nlohmann::json summary_to_json(const MetricSummary & summary);

}  // namespace dqplan

#endif  // DQPLAN_SCENARIO_IO_HPP_
