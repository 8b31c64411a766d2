#pragma once

#include "parafoil/planner.hpp"
#include "parafoil/world.hpp"

namespace parafoil {

/// Rule-of-thumb landing pattern: home on a key point upwind of the target,
/// burn excess altitude there in a steep spiral, then fly the final approach
/// into the wind.
struct HumanStrategy {
  double approach_altitude = 100.0;  // start of the into-wind final [m]
  double spiral_bank = kMaxBank;
  double steering_gain = 1.0;        // bank per radian of heading error
  double key_point_radius = 150.0;   // spiral once this close to the key point [m]
  double return_margin = 60.0;       // altitude kept for flying back after the spiral [m]
};

enum class HumanPhase { homing, spiral, returning, final_approach };

struct HumanFlight {
  std::vector<TrajectorySample> samples;
  std::vector<HumanPhase> phases;  // phase active over the step starting at each sample
  bool landed_in_goal = false;
  double total_cost = 0.0;
};

/// Simulates the pattern from the scenario's initial state until the goal
/// box is reached or the canopy touches the ground. Obstacles are ignored.
HumanFlight simulate_human_strategy(const Scenario& scenario, const HumanStrategy& strategy = {},
                                    double step = kIntegrationStep);

}  // namespace parafoil
