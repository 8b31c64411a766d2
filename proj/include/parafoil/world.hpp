#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "parafoil/dynamics.hpp"

namespace parafoil {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double h = 0.0;
};

inline Vec3 position(const ParafoilState& s) { return {s.x, s.y, s.h}; }

inline double distance_sq(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dh = a.h - b.h;
  return dx * dx + dy * dy + dh * dh;
}

/// Closed axis-aligned box.
struct Box3 {
  double x_lo = 0.0, x_hi = 0.0;
  double y_lo = 0.0, y_hi = 0.0;
  double h_lo = 0.0, h_hi = 0.0;

  bool contains(const Vec3& p, double pad = 0.0) const {
    return p.x >= x_lo - pad && p.x <= x_hi + pad && p.y >= y_lo - pad && p.y <= y_hi + pad &&
           p.h >= h_lo - pad && p.h <= h_hi + pad;
  }
  Vec3 center() const { return {0.5 * (x_lo + x_hi), 0.5 * (y_lo + y_hi), 0.5 * (h_lo + h_hi)}; }
};

struct WorkspaceBounds {
  double x_min = 0.0, x_max = 0.0;
  double y_min = 0.0, y_max = 0.0;
  double h_min = 0.0, h_max = 0.0;

  Box3 box() const { return {x_min, x_max, y_min, y_max, h_min, h_max}; }
  bool contains(const Vec3& p) const { return box().contains(p); }
  void validate() const;
};

/// Rectangular footprint extruded over an altitude band; a closed set.
struct PrismObstacle {
  Box3 extent;
  std::string label;

  bool contains(const Vec3& p, double pad = 0.0) const { return extent.contains(p, pad); }
  void validate() const;
};

struct GoalRegion {
  Box3 box;

  void validate() const;
};

struct Scenario {
  ParafoilState initial;
  ParafoilParams params;
  Wind wind;
  WorkspaceBounds bounds;
  std::vector<PrismObstacle> obstacles;
  GoalRegion goal;
  double approach_threshold_h = 160.0;
  double control_bound = kMaxBank;
  /// Obstacle padding standing in for the pilot's body extent [m].
  double safety_radius = 0.0;

  /// Throws ConfigError describing the first violated constraint.
  void validate() const;
};

/// True when `p` is outside the workspace or inside any (padded) obstacle.
bool point_in_collision(const Vec3& p, std::span<const PrismObstacle> obstacles, const WorkspaceBounds& bounds,
                        double padding = 0.0);

bool path_collision_free(std::span<const TimedState> path, std::span<const PrismObstacle> obstacles,
                         const WorkspaceBounds& bounds, double padding = 0.0);

bool in_goal(const ParafoilState& s, const GoalRegion& goal);

/// Approach law for a scenario, or nothing when the wind has no horizontal
/// direction to land against.
std::optional<ApproachLaw> approach_law_for(const Scenario& scenario, double threshold_h);

}  // namespace parafoil
