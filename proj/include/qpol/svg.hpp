#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qpol {

/// One plotted series: a polyline, or scatter points when line = false.
struct SvgSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool line = true;
  std::string color = "#1f63a8";
};

/// Minimal self-contained SVG line/scatter chart. Axes and ticks are
/// derived from the data extents; no external styles or scripts.
std::string render_svg_chart(const std::string& title, const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<SvgSeries>& series);

}  // namespace qpol
