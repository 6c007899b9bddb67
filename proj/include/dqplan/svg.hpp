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

#ifndef DQPLAN_SVG_HPP_
#define DQPLAN_SVG_HPP_

#include <string>
#include <vector>

#include "dqplan/geometry.hpp"

namespace dqplan {

/// Minimal deterministic SVG plot writer: polylines, axes, ticks, legend.
/// Every plot written by the CLI is paired with the CSV behind it.
struct PlotSeries {
  std::string name;
  std::string color;  // empty -> palette
  bool dashed{false};
  std::vector<PlanarPoint> points;
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
};

std::string render_line_plot(const LinePlot & plot, int width = 820, int height = 460);

struct BarPanel {
  std::string title;
  std::vector<std::string> labels;
  std::vector<double> values;
};

/// 2x2 (or n-panel) bar chart figure.
std::string render_bar_panels(const std::string & title, const std::vector<BarPanel> & panels,
                              int width = 980, int height = 700);

}  // namespace dqplan

#endif  // DQPLAN_SVG_HPP_
