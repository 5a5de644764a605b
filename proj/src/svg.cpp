#include "ink/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "ink/errors.hpp"

namespace ink {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double nice_step(double range, int target_ticks) {
  if (range <= 0) return 1.0;
  const double raw = range / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) return m * mag;
  }
  return 10.0 * mag;
}

}  // namespace

std::string render_line_chart(const LineChart& chart, int width, int height) {
  const double ml = 64, mr = 16, mt = 32, mb = 48;
  const double pw = width - ml - mr, ph = height - mt - mb;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = 0.0, ymax = -std::numeric_limits<double>::infinity();
  for (const auto& s : chart.series) {
    for (auto [x, y] : s.points) {
      if (std::isfinite(x)) { xmin = std::min(xmin, x); xmax = std::max(xmax, x); }
      if (std::isfinite(y)) { ymin = std::min(ymin, y); ymax = std::max(ymax, y); }
    }
  }
  if (!std::isfinite(xmin)) { xmin = 0; xmax = 1; }
  if (!std::isfinite(ymax)) { ymax = 1; }
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  ymax += (ymax - ymin) * 0.05;

  auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
         std::to_string(height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + fmt(width / 2.0) + "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">" +
         chart.title + "</text>\n";

  // axes
  out += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt + ph) + "\" x2=\"" + fmt(ml + pw) + "\" y2=\"" +
         fmt(mt + ph) + "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt) + "\" x2=\"" + fmt(ml) + "\" y2=\"" + fmt(mt + ph) +
         "\" stroke=\"black\"/>\n";

  const double xstep = nice_step(xmax - xmin, 6);
  for (double x = std::ceil(xmin / xstep) * xstep; x <= xmax + 1e-12; x += xstep) {
    out += "<line x1=\"" + fmt(sx(x)) + "\" y1=\"" + fmt(mt + ph) + "\" x2=\"" + fmt(sx(x)) + "\" y2=\"" +
           fmt(mt + ph + 4) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + fmt(sx(x)) + "\" y=\"" + fmt(mt + ph + 16) + "\" text-anchor=\"middle\">" + fmt(x) +
           "</text>\n";
  }
  const double ystep = nice_step(ymax - ymin, 5);
  for (double y = std::ceil(ymin / ystep) * ystep; y <= ymax + 1e-12; y += ystep) {
    out += "<line x1=\"" + fmt(ml - 4) + "\" y1=\"" + fmt(sy(y)) + "\" x2=\"" + fmt(ml) + "\" y2=\"" +
           fmt(sy(y)) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + fmt(ml - 8) + "\" y=\"" + fmt(sy(y) + 3) + "\" text-anchor=\"end\">" + fmt(y) +
           "</text>\n";
  }
  out += "<text x=\"" + fmt(ml + pw / 2) + "\" y=\"" + fmt(height - 8.0) + "\" text-anchor=\"middle\">" +
         chart.x_label + "</text>\n";
  out += "<text x=\"14\" y=\"" + fmt(mt + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
         fmt(mt + ph / 2) + ")\">" + chart.y_label + "</text>\n";

  std::size_t color_index = 0;
  double legend_y = mt + 8;
  for (const auto& s : chart.series) {
    const char* color = kPalette[color_index % (sizeof(kPalette) / sizeof(kPalette[0]))];
    ++color_index;
    std::string path;
    bool first = true;
    for (auto [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      path += (first ? "M" : "L");
      path += fmt(sx(x)) + "," + fmt(sy(y)) + " ";
      first = false;
    }
    out += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"" +
           (s.dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
    out += "<line x1=\"" + fmt(ml + pw - 130) + "\" y1=\"" + fmt(legend_y) + "\" x2=\"" + fmt(ml + pw - 110) +
           "\" y2=\"" + fmt(legend_y) + "\" stroke=\"" + color + "\" stroke-width=\"1.5\"" +
           (s.dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
    out += "<text x=\"" + fmt(ml + pw - 104) + "\" y=\"" + fmt(legend_y + 3) + "\">" + s.label + "</text>\n";
    legend_y += 14;
  }
  out += "</svg>\n";
  return out;
}

void write_line_chart(const LineChart& chart, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write chart: " + path);
  out << render_line_chart(chart);
}

}  // namespace ink
