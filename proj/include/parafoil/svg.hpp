#pragma once

#include <string>
#include <utility>
#include <vector>

namespace parafoil::svg {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
  std::string color = "#1f77b4";
  bool dashed = false;
};

/// Filled axis-aligned rectangle drawn under the series (obstacles, goal).
struct Region {
  std::string label;
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
  std::string fill = "#cccccc";
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::vector<Region> regions;
  bool equal_aspect = false;
};

/// Static line chart with axes, ticks and a legend. Output depends only on
/// the input (no timestamps or random ids).
std::string render(const Plot& plot, int width = 720, int height = 540);

}  // namespace parafoil::svg
