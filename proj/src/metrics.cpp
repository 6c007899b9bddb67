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

#include "dqplan/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dqplan {
namespace {

double step_min(const std::vector<double> & values)
{
  double out = kInfiniteTtc;
  for (double v : values) {
    out = std::min(out, v);
  }
  return out;
}

std::string format_value(double v)
{
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  if (std::isnan(v)) {
    return "";
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

double MetricSummary::fraction_below(double threshold) const
{
  for (const auto & [thr, frac] : ttc_below_fractions) {
    if (thr == threshold) {
      return frac;
    }
  }
  throw std::domain_error("MetricSummary: threshold not reported");
}

MetricSummary summarize(const SimLog & log, const SafetyParams & params)
{
  if (log.steps.empty()) {
    throw std::domain_error("summarize: empty log");
  }
  params.validate();

  MetricSummary out;
  const auto n = static_cast<double>(log.steps.size());
  std::vector<int> below_counts(params.ttc_thresholds.size(), 0);
  double gap_sum = 0.0;
  double curv_sum = 0.0;
  double jerk_sq_sum = 0.0;
  double jerk_abs_sum = 0.0;
  const bool has_obstacles = !log.steps.front().gaps.empty();

  for (const StepRecord & step : log.steps) {
    const double g = step_min(step.gaps);
    const double ttc = step_min(step.ttcs);
    if (has_obstacles) {
      out.min_gap = std::min(out.min_gap, g);
      gap_sum += g;
      out.min_ttc = std::min(out.min_ttc, ttc);
      if (ttc < params.t_safe) {
        ++out.ttc_violation_count;
      }
      for (std::size_t i = 0; i < params.ttc_thresholds.size(); ++i) {
        if (ttc < params.ttc_thresholds[i]) {
          ++below_counts[i];
        }
      }
    }
    const double curv = std::fabs(step.curvature);
    out.max_curvature = std::max(out.max_curvature, curv);
    curv_sum += curv;
    const double jerk = std::fabs(step.jy);
    out.max_lateral_jerk = std::max(out.max_lateral_jerk, jerk);
    jerk_abs_sum += jerk;
    jerk_sq_sum += step.jy * step.jy;
  }
  out.avg_gap = has_obstacles ? gap_sum / n : kInfiniteTtc;
  out.avg_curvature = curv_sum / n;
  out.avg_abs_lateral_jerk = jerk_abs_sum / n;
  out.rms_lateral_jerk = std::sqrt(jerk_sq_sum / n);
  for (std::size_t i = 0; i < params.ttc_thresholds.size(); ++i) {
    out.ttc_below_fractions.emplace_back(params.ttc_thresholds[i],
                                         static_cast<double>(below_counts[i]) / n);
  }

  // Maneuver completion: last step where the lateral position still differs
  // from its final value.
  const double y_final = log.steps.back().y;
  double completion = 0.0;
  for (const StepRecord & step : log.steps) {
    if (std::fabs(step.y - y_final) > 1e-3) {
      completion = step.t + log.dt;
    }
  }
  out.total_time = completion;
  out.longitudinal_distance = log.speed * completion;
  return out;
}

ComparisonTable compare(std::span<const std::pair<std::string, MetricSummary>> summaries)
{
  if (summaries.size() < 2) {
    throw std::domain_error("compare: need at least 2 summaries");
  }
  ComparisonTable table;
  table.metric_names = {"min_ttc",       "ttc_violations", "min_gap",
                        "avg_gap",       "max_curvature",  "avg_curvature",
                        "max_lat_jerk",  "rms_lat_jerk",   "avg_abs_lat_jerk",
                        "long_distance", "total_time"};
  auto row = [](const MetricSummary & s) {
    return std::vector<double>{s.min_ttc,
                               static_cast<double>(s.ttc_violation_count),
                               s.min_gap,
                               s.avg_gap,
                               s.max_curvature,
                               s.avg_curvature,
                               s.max_lateral_jerk,
                               s.rms_lateral_jerk,
                               s.avg_abs_lateral_jerk,
                               s.longitudinal_distance,
                               s.total_time};
  };
  table.values.assign(table.metric_names.size(), {});
  table.deltas.assign(table.metric_names.size(), {});
  std::vector<double> reference;
  for (const auto & [name, summary] : summaries) {
    table.entries.push_back(name);
    const auto vals = row(summary);
    if (reference.empty()) {
      reference = vals;
    }
    for (std::size_t m = 0; m < vals.size(); ++m) {
      table.values[m].push_back(vals[m]);
      double delta = std::numeric_limits<double>::quiet_NaN();
      if (table.values[m].size() > 1 && std::isfinite(reference[m]) &&
          std::isfinite(vals[m]) && reference[m] != 0.0) {
        delta = (vals[m] - reference[m]) / reference[m];
      }
      table.deltas[m].push_back(delta);
    }
  }
  return table;
}

std::string to_csv(const ComparisonTable & table)
{
  std::ostringstream out;
  out << "metric";
  for (const auto & e : table.entries) {
    out << "," << e;
  }
  for (std::size_t i = 1; i < table.entries.size(); ++i) {
    out << "," << table.entries[i] << "_vs_" << table.entries[0] << "_pct";
  }
  out << "\n";
  for (std::size_t m = 0; m < table.metric_names.size(); ++m) {
    out << table.metric_names[m];
    for (double v : table.values[m]) {
      out << "," << format_value(v);
    }
    for (std::size_t i = 1; i < table.entries.size(); ++i) {
      const double d = table.deltas[m][i];
      out << "," << (std::isnan(d) ? "" : format_value(100.0 * d));
    }
    out << "\n";
  }
  return out.str();
}

std::string to_text(const ComparisonTable & table)
{
  std::ostringstream out;
  constexpr int kw = 18, vw = 22;
  out << std::string(kw, ' ');
  for (const auto & e : table.entries) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%*s", vw, e.substr(0, 20).c_str());
    out << buf;
  }
  out << "\n";
  for (std::size_t m = 0; m < table.metric_names.size(); ++m) {
    char key[64];
    std::snprintf(key, sizeof(key), "%-*s", kw, table.metric_names[m].c_str());
    out << key;
    for (std::size_t i = 0; i < table.values[m].size(); ++i) {
      char buf[64];
      std::string cell = format_value(table.values[m][i]);
      if (i > 0 && !std::isnan(table.deltas[m][i])) {
        char d[24];
        std::snprintf(d, sizeof(d), " (%+.1f%%)", 100.0 * table.deltas[m][i]);
        cell += d;
      }
      std::snprintf(buf, sizeof(buf), "%*s", vw, cell.c_str());
      out << buf;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace dqplan
