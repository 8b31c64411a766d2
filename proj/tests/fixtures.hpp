#pragma once

#include <string>

#include "parafoil/world.hpp"

namespace fixture {

// Sample-run layout: 3000 m square, 400 m landing square, no-fly band
// 150-300 m over the landing square, wind (-3, -3).
inline parafoil::Scenario sample_run(double speed = 19.2) {
  parafoil::Scenario s;
  s.initial = {-1500, 500, 1000, 0};
  s.params = {speed, 3.0, 9.81};
  s.wind = {-3, -3, 0};
  s.bounds = {-1500, 1500, -1500, 1500, 0, 1000};
  s.obstacles.push_back({{-200, 200, -200, 200, 150, 300}, "band"});
  s.goal.box = {-200, 200, -200, 200, 0, 5};
  return s;
}

inline std::string sample_run_json() {
  return R"({
  "initial": {"x": -1500, "y": 500, "h": 1000, "psi": 0},
  "params": {"speed": 19.2, "glide_ratio": 3},
  "wind": {"wx": -3, "wy": -3},
  "bounds": {"x_min": -1500, "x_max": 1500, "y_min": -1500, "y_max": 1500, "h_min": 0, "h_max": 1000},
  "obstacles": [{"label": "band", "x_lo": -200, "x_hi": 200, "y_lo": -200, "y_hi": 200, "h_lo": 150, "h_hi": 300}],
  "goal": {"x_lo": -200, "x_hi": 200, "y_lo": -200, "y_hi": 200, "h_lo": 0, "h_hi": 5}
})";
}

}  // namespace fixture
