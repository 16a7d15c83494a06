#pragma once

#include <string>
#include <vector>

#include "mincost/dataset.hpp"

namespace mincost {

struct SvgSeries {
  std::string label;
  std::vector<double> xs, ys;
};

// Self-contained line chart (axes, ticks, legend); no external assets.
std::string svg_line_chart(const std::vector<SvgSeries>& series, int width = 720,
                           int height = 480);

struct SvgBoundaryLine {
  Vec normal;     // unit
  double offset;  // line is {p : normal . p = offset}
};

struct SvgOverlay {
  std::vector<Vec> points;  // 2D data points
  double ball_radius = 0.0;
  std::vector<SvgBoundaryLine> boundaries;
  std::vector<std::pair<Vec, Vec>> edges;  // reference segments
};

// 2D scene: data points with norm-balls, ReLU boundary lines, reference edges.
std::string svg_overlay(const SvgOverlay& scene, int width = 560,
                        int height = 560);

}  // namespace mincost
