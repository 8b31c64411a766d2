#include "parafoil/human_pilot.hpp"

#include <algorithm>
#include <cmath>

namespace parafoil {

namespace {

double heading_toward(const ParafoilState& s, double tx, double ty) { return std::atan2(-(ty - s.y), tx - s.x); }

}  // namespace

HumanFlight simulate_human_strategy(const Scenario& scenario, const HumanStrategy& strategy, double step) {
  const ParafoilParams& p = scenario.params;
  const Wind& w = scenario.wind;
  const Vec3 target = scenario.goal.box.center();
  const double bound = scenario.control_bound;

  const double into_wind = w.horizontal_magnitude() > 0.0 ? anti_wind_heading(w)
                                                           : heading_toward(scenario.initial, target.x, target.y);
  // Key point: where an into-wind straight glide from the approach altitude
  // touches down on the target.
  const StateRate final_rate = state_derivative({0.0, 0.0, 0.0, into_wind}, 0.0, p, w);
  const double final_time = strategy.approach_altitude / std::max(1e-6, -final_rate.dh);
  const double key_x = target.x - final_rate.dx * final_time;
  const double key_y = target.y - final_rate.dy * final_time;

  HumanFlight flight;
  ParafoilState s = scenario.initial;
  double t = 0.0;
  HumanPhase phase = HumanPhase::homing;
  flight.samples.push_back({0.0, s, 0.0});
  if (in_goal(s, scenario.goal)) {
    flight.landed_in_goal = true;
    flight.phases.push_back(HumanPhase::final_approach);
    return flight;
  }

  const double steer_limit = 0.5 * kPi * (1.0 + 1e-9);
  for (long k = 0; k < 1'000'000; ++k) {
    const double to_key = std::hypot(key_x - s.x, key_y - s.y);
    if (s.h <= strategy.approach_altitude) {
      phase = HumanPhase::final_approach;
    } else if (phase == HumanPhase::homing && to_key < strategy.key_point_radius) {
      phase = s.h > strategy.approach_altitude + strategy.return_margin ? HumanPhase::spiral : HumanPhase::returning;
    } else if (phase == HumanPhase::spiral && s.h <= strategy.approach_altitude + strategy.return_margin) {
      phase = HumanPhase::returning;
    } else if (phase == HumanPhase::spiral && to_key > 2.0 * strategy.key_point_radius) {
      phase = HumanPhase::homing;  // drifted off; fly back before spiralling on
    }

    double phi = 0.0;
    switch (phase) {
      case HumanPhase::homing:
      case HumanPhase::returning: {
        const double error = wrap_angle(s.psi - heading_toward(s, key_x, key_y));
        phi = std::clamp(strategy.steering_gain * std::clamp(error, -steer_limit, steer_limit), -bound, bound);
        break;
      }
      case HumanPhase::spiral:
        phi = strategy.spiral_bank;
        break;
      case HumanPhase::final_approach:
        phi = final_approach_bank(s.psi, into_wind, bound);
        break;
    }

    flight.samples.back().phi = phi;
    flight.phases.push_back(phase);
    s = rk4_step(s, phi, p, w, step);
    t = static_cast<double>(k + 1) * step;
    flight.total_cost += phi * phi * step;
    flight.samples.push_back({t, s, phi});
    if (in_goal(s, scenario.goal)) {
      flight.landed_in_goal = true;
      break;
    }
    if (s.h <= 0.0) break;
  }
  flight.phases.push_back(phase);
  return flight;
}

}  // namespace parafoil
