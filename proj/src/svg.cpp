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

#include "dqplan/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace dqplan {
namespace {

const char * kPalette[] = {"#1f3b73", "#d1495b", "#edae49", "#2e8b57", "#7b4fa6", "#00798c"};

std::string num(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Range {
  double lo{0.0}, hi{1.0};

  void include(double v)
  {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad()
  {
    if (hi - lo < 1e-12) {
      lo -= 1.0;
      hi += 1.0;
    } else {
      const double margin = 0.05 * (hi - lo);
      lo -= margin;
      hi += margin;
    }
  }
};

}  // namespace

std::string render_line_plot(const LinePlot & plot, int width, int height)
{
  const double ml = 62, mr = 16, mt = 34, mb = 44;
  const double pw = width - ml - mr, ph = height - mt - mb;

  Range xr, yr;
  bool first = true;
  for (const auto & s : plot.series) {
    for (const auto & p : s.points) {
      if (first) {
        xr.lo = xr.hi = p.x;
        yr.lo = yr.hi = p.y;
        first = false;
      }
      xr.include(p.x);
      yr.include(p.y);
    }
  }
  xr.pad();
  yr.pad();
  auto sx = [&](double x) { return ml + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto sy = [&](double y) { return mt + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"14\">"
      << plot.title << "</text>\n";

  // Axes and ticks.
  out << "<rect x=\"" << num(ml) << "\" y=\"" << num(mt) << "\" width=\"" << num(pw)
      << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / 5.0;
    const double fy = yr.lo + (yr.hi - yr.lo) * i / 5.0;
    out << "<line x1=\"" << num(sx(fx)) << "\" y1=\"" << num(mt + ph) << "\" x2=\""
        << num(sx(fx)) << "\" y2=\"" << num(mt + ph + 4) << "\" stroke=\"#444\"/>\n"
        << "<text x=\"" << num(sx(fx)) << "\" y=\"" << num(mt + ph + 16)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << num(fx)
        << "</text>\n"
        << "<line x1=\"" << num(ml - 4) << "\" y1=\"" << num(sy(fy)) << "\" x2=\"" << num(ml)
        << "\" y2=\"" << num(sy(fy)) << "\" stroke=\"#444\"/>\n"
        << "<text x=\"" << num(ml - 7) << "\" y=\"" << num(sy(fy) + 3)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << num(fy)
        << "</text>\n";
  }
  out << "<text x=\"" << width / 2 << "\" y=\"" << height - 8
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << plot.x_label << "</text>\n"
      << "<text x=\"14\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
         "transform=\"rotate(-90 14 "
      << mt + ph / 2 << ")\">" << plot.y_label << "</text>\n";

  // Series, with palette colors resolved once so the legend matches.
  std::vector<std::string> colors;
  std::size_t color_index = 0;
  for (const auto & s : plot.series) {
    colors.push_back(s.color.empty()
                       ? kPalette[color_index++ % (sizeof(kPalette) / sizeof(*kPalette))]
                       : s.color);
  }
  for (std::size_t i = 0; i < plot.series.size(); ++i) {
    const auto & s = plot.series[i];
    out << "<polyline fill=\"none\" stroke=\"" << colors[i] << "\" stroke-width=\"1.6\"";
    if (s.dashed) {
      out << " stroke-dasharray=\"6 4\"";
    }
    out << " points=\"";
    for (const auto & p : s.points) {
      out << num(sx(p.x)) << "," << num(sy(p.y)) << " ";
    }
    out << "\"/>\n";
  }

  double ly = mt + 12;
  for (std::size_t i = 0; i < plot.series.size(); ++i) {
    const auto & s = plot.series[i];
    if (s.name.empty()) {
      continue;
    }
    out << "<line x1=\"" << num(ml + pw - 150) << "\" y1=\"" << num(ly) << "\" x2=\""
        << num(ml + pw - 126) << "\" y2=\"" << num(ly) << "\" stroke=\"" << colors[i]
        << "\" stroke-width=\"2\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n"
        << "<text x=\"" << num(ml + pw - 120) << "\" y=\"" << num(ly + 3)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.name << "</text>\n";
    ly += 15;
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_bar_panels(const std::string & title, const std::vector<BarPanel> & panels,
                              int width, int height)
{
  const int cols = 2;
  const int rows = static_cast<int>((panels.size() + 1) / 2);
  const double title_h = 28;
  const double cw = static_cast<double>(width) / cols;
  const double ch = (height - title_h) / std::max(rows, 1);

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << width / 2 << "\" y=\"18\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">"
      << title << "</text>\n";

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const BarPanel & panel = panels[p];
    const double ox = (p % cols) * cw + 52;
    const double oy = title_h + (p / cols) * ch + 24;
    const double pw = cw - 70;
    const double ph = ch - 72;

    double vmax = 0.0;
    for (double v : panel.values) {
      vmax = std::max(vmax, v);
    }
    if (vmax <= 0.0) {
      vmax = 1.0;
    }
    out << "<text x=\"" << num(ox + pw / 2) << "\" y=\"" << num(oy - 8)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << panel.title << "</text>\n"
        << "<line x1=\"" << num(ox) << "\" y1=\"" << num(oy + ph) << "\" x2=\""
        << num(ox + pw) << "\" y2=\"" << num(oy + ph) << "\" stroke=\"#444\"/>\n"
        << "<line x1=\"" << num(ox) << "\" y1=\"" << num(oy) << "\" x2=\"" << num(ox)
        << "\" y2=\"" << num(oy + ph) << "\" stroke=\"#444\"/>\n";
    const std::size_t n = panel.values.size();
    const double slot = pw / std::max<std::size_t>(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
      const double h = panel.values[i] / vmax * (ph - 10);
      const double bx = ox + slot * i + 0.18 * slot;
      out << "<rect x=\"" << num(bx) << "\" y=\"" << num(oy + ph - h) << "\" width=\""
          << num(0.64 * slot) << "\" height=\"" << num(h) << "\" fill=\"" << kPalette[i % 6]
          << "\"/>\n"
          << "<text x=\"" << num(bx + 0.32 * slot) << "\" y=\"" << num(oy + ph - h - 4)
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
          << num(panel.values[i]) << "</text>\n"
          << "<text x=\"" << num(bx + 0.32 * slot) << "\" y=\"" << num(oy + ph + 13)
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"9\">"
          << panel.labels[i] << "</text>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace dqplan
