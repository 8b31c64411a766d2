#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace parafoil {

inline constexpr double kPi = std::numbers::pi;
/// Bank-angle bound applied to every control, sampled or computed.
inline constexpr double kMaxBank = kPi / 6.0;
/// Fixed RK4 step used by the planner and all collision/goal sampling [s].
inline constexpr double kIntegrationStep = 0.05;

class IntegrationFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the wind has no horizontal component, so there is no
/// direction to land against.
class NoWindDirection : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Wraps an angle into (-pi, pi].
double wrap_angle(double angle);

struct ParafoilState {
  double x = 0.0;    // [m]
  double y = 0.0;    // [m]
  double h = 0.0;    // altitude above ground [m]
  double psi = 0.0;  // heading [rad], (-pi, pi]
};

struct ParafoilParams {
  double speed = 15.0;       // airspeed V [m/s]
  double glide_ratio = 3.0;  // L/D
  double g = 9.81;           // [m/s^2]

  /// Throws std::invalid_argument unless every field is finite and positive.
  void validate() const;
};

struct Wind {
  double wx = 0.0;
  double wy = 0.0;
  double wh = 0.0;

  double horizontal_magnitude() const { return std::hypot(wx, wy); }
};

/// One edge of the search tree. Approach-law segments carry no constant bank;
/// the bank is recomputed from the heading at every integrator step.
struct ControlSegment {
  double phi = 0.0;
  double duration = 0.0;
  bool is_approach_law = false;
};

struct StateRate {
  double dx = 0.0;
  double dy = 0.0;
  double dh = 0.0;
  double dpsi = 0.0;
};

struct TimedState {
  double t = 0.0;
  ParafoilState state;
};

/// Proportional final-approach controller. Active whenever the altitude at
/// the start of an integrator step is at or below `threshold_h`.
struct ApproachLaw {
  double wind_heading = 0.0;
  double threshold_h = 160.0;
  double bank_limit = kMaxBank;
};

/// Equilibrium flight angle for a given bank; always negative.
double flight_angle(double phi, double glide_ratio);

StateRate state_derivative(const ParafoilState& s, double phi, const ParafoilParams& p, const Wind& w);

/// Single classical RK4 step with the bank held constant over the step.
/// The returned heading is wrapped.
ParafoilState rk4_step(const ParafoilState& s, double phi, const ParafoilParams& p, const Wind& w, double dt);

/// Closed-form state after flying a constant bank for `t` seconds.
ParafoilState analytic_constant_control(const ParafoilState& s0, double phi, double t, const ParafoilParams& p,
                                        const Wind& w);

/// Heading whose air-relative velocity directly opposes the horizontal wind.
double anti_wind_heading(const Wind& w);

double final_approach_bank(double psi, double wind_heading, double bank_limit = kMaxBank);

/// Bank applied over the integrator step that starts in state `s`.
double applied_bank(const ParafoilState& s, const ControlSegment& seg, const std::optional<ApproachLaw>& law);

enum class Termination { completed, ground, stopped };

struct Propagation {
  std::vector<TimedState> path;  // includes the start state and the endpoint
  std::vector<double> controls;  // bank per integrator step, path.size() - 1 entries
  double cost = 0.0;             // sum of phi^2 * dt over the steps
  Termination termination = Termination::completed;
};

/// Integrates one control segment step by step. After every step the visitor
/// is called as `visitor(double t, const ParafoilState& after, double phi, double dt)`
/// and returns false to stop. Ground contact (h <= 0) also stops the run.
/// Throws IntegrationFault on a non-finite state.
template <class Visitor>
Termination propagate_visit(const ParafoilState& s0, const ControlSegment& seg, const ParafoilParams& p,
                            const Wind& w, double step, const std::optional<ApproachLaw>& law,
                            Visitor&& visitor) {
  if (!(step > 0.0)) throw std::invalid_argument("integration step must be positive");
  if (!(seg.duration > 0.0)) throw std::invalid_argument("segment duration must be positive");
  if (seg.is_approach_law && !law) throw std::invalid_argument("approach-law segment without an approach law");

  const double whole = std::floor(seg.duration / step + 1e-9);
  const bool exact = std::abs(seg.duration - whole * step) <= 1e-9 * step;
  const long steps = exact ? static_cast<long>(whole) : static_cast<long>(whole) + 1;

  ParafoilState s = s0;
  for (long k = 0; k < steps; ++k) {
    const double dt = (exact || k + 1 < steps) ? step : seg.duration - whole * step;
    const double phi = applied_bank(s, seg, law);
    s = rk4_step(s, phi, p, w, dt);
    if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.h) || !std::isfinite(s.psi))
      throw IntegrationFault("non-finite state during propagation");
    const double t = (k + 1 < steps || exact) ? static_cast<double>(k + 1) * step : seg.duration;
    if (!visitor(t, s, phi, dt)) return Termination::stopped;
    if (s.h <= 0.0) return Termination::ground;
  }
  return Termination::completed;
}

Propagation propagate(const ParafoilState& s0, const ControlSegment& seg, const ParafoilParams& p, const Wind& w,
                      double step = kIntegrationStep, const std::optional<ApproachLaw>& law = std::nullopt);

}  // namespace parafoil
