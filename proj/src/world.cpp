#include "parafoil/world.hpp"

#include <algorithm>
#include <cmath>

namespace parafoil {

namespace {

bool finite_box(const Box3& b) {
  return std::isfinite(b.x_lo) && std::isfinite(b.x_hi) && std::isfinite(b.y_lo) && std::isfinite(b.y_hi) &&
         std::isfinite(b.h_lo) && std::isfinite(b.h_hi);
}

}  // namespace

void WorkspaceBounds::validate() const {
  if (!finite_box(box())) throw ConfigError("bounds: all limits must be finite");
  if (!(x_min < x_max && y_min < y_max && h_min < h_max)) throw ConfigError("bounds: min must be below max on every axis");
  if (h_min < 0.0) throw ConfigError("bounds: h_min must be non-negative");
}

void PrismObstacle::validate() const {
  if (!finite_box(extent)) throw ConfigError("obstacle '" + label + "': limits must be finite");
  if (!(extent.x_lo < extent.x_hi && extent.y_lo < extent.y_hi))
    throw ConfigError("obstacle '" + label + "': empty footprint");
  if (!(0.0 <= extent.h_lo && extent.h_lo < extent.h_hi))
    throw ConfigError("obstacle '" + label + "': altitude band must satisfy 0 <= h_lo < h_hi");
}

void GoalRegion::validate() const {
  if (!finite_box(box)) throw ConfigError("goal: limits must be finite");
  if (!(box.x_lo <= box.x_hi && box.y_lo <= box.y_hi && box.h_lo <= box.h_hi)) throw ConfigError("goal: empty box");
  if (box.h_lo < 0.0) throw ConfigError("goal: h_lo must be non-negative");
}

void Scenario::validate() const {
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("params: ") + e.what());
  }
  if (!std::isfinite(wind.wx) || !std::isfinite(wind.wy) || !std::isfinite(wind.wh))
    throw ConfigError("wind: components must be finite");
  bounds.validate();
  for (const auto& o : obstacles) o.validate();
  goal.validate();
  if (!std::isfinite(initial.x) || !std::isfinite(initial.y) || !std::isfinite(initial.h) ||
      !std::isfinite(initial.psi))
    throw ConfigError("initial: state must be finite");
  if (!(initial.psi > -kPi && initial.psi <= kPi)) throw ConfigError("initial: psi must lie in (-pi, pi]");
  if (!(std::isfinite(approach_threshold_h) && approach_threshold_h >= 0.0))
    throw ConfigError("approach_threshold_h must be non-negative");
  if (!(control_bound > 0.0 && control_bound < kPi / 2.0)) throw ConfigError("control_bound must lie in (0, pi/2)");
  if (!(std::isfinite(safety_radius) && safety_radius >= 0.0)) throw ConfigError("safety_radius must be non-negative");

  const Box3 b = bounds.box();
  if (!b.contains({goal.box.x_lo, goal.box.y_lo, goal.box.h_lo}) || !b.contains({goal.box.x_hi, goal.box.y_hi, goal.box.h_hi}))
    throw ConfigError("goal must lie inside the bounds");
  if (point_in_collision(position(initial), obstacles, bounds, safety_radius))
    throw ConfigError("initial state is outside the bounds or inside an obstacle");
}

bool point_in_collision(const Vec3& p, std::span<const PrismObstacle> obstacles, const WorkspaceBounds& bounds,
                        double padding) {
  if (!bounds.contains(p)) return true;
  return std::any_of(obstacles.begin(), obstacles.end(), [&](const PrismObstacle& o) { return o.contains(p, padding); });
}

bool path_collision_free(std::span<const TimedState> path, std::span<const PrismObstacle> obstacles,
                         const WorkspaceBounds& bounds, double padding) {
  return std::none_of(path.begin(), path.end(), [&](const TimedState& s) {
    return point_in_collision(position(s.state), obstacles, bounds, padding);
  });
}

bool in_goal(const ParafoilState& s, const GoalRegion& goal) { return goal.box.contains(position(s)); }

std::optional<ApproachLaw> approach_law_for(const Scenario& scenario, double threshold_h) {
  if (scenario.wind.horizontal_magnitude() == 0.0) return std::nullopt;
  return ApproachLaw{anti_wind_heading(scenario.wind), threshold_h, scenario.control_bound};
}

}  // namespace parafoil
