#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ink {

/// Minimal SVG line charts for the experiment figures; fixed palette, no
/// external plotting dependency.
struct ChartSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool dashed = false;
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<ChartSeries> series;
};

std::string render_line_chart(const LineChart& chart, int width = 640, int height = 400);
void write_line_chart(const LineChart& chart, const std::string& path);

}  // namespace ink
