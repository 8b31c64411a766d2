#include "parafoil/dynamics.hpp"

#include <algorithm>

namespace parafoil {

double wrap_angle(double angle) {
  if (angle > -kPi && angle <= kPi) return angle;
  double a = std::remainder(angle, 2.0 * kPi);  // [-pi, pi]
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

void ParafoilParams::validate() const {
  if (!(std::isfinite(speed) && speed > 0.0)) throw std::invalid_argument("parafoil speed must be positive");
  if (!(std::isfinite(glide_ratio) && glide_ratio > 0.0))
    throw std::invalid_argument("glide ratio must be positive");
  if (!(std::isfinite(g) && g > 0.0)) throw std::invalid_argument("gravity must be positive");
}

double flight_angle(double phi, double glide_ratio) {
  return std::atan(-1.0 / (std::cos(phi) * glide_ratio));
}

namespace {

struct GlideTerms {
  double horizontal;  // V cos(gamma)
  double vertical;    // V sin(gamma) + wh
  double turn_rate;
};

GlideTerms glide_terms(double phi, const ParafoilParams& p, const Wind& w) {
  const double gamma = flight_angle(phi, p.glide_ratio);
  return {p.speed * std::cos(gamma), p.speed * std::sin(gamma) + w.wh, -(p.g / p.speed) * std::tan(phi)};
}

}  // namespace

StateRate state_derivative(const ParafoilState& s, double phi, const ParafoilParams& p, const Wind& w) {
  const GlideTerms g = glide_terms(phi, p, w);
  return {g.horizontal * std::cos(s.psi) + w.wx, -g.horizontal * std::sin(s.psi) + w.wy, g.vertical, g.turn_rate};
}

ParafoilState rk4_step(const ParafoilState& s, double phi, const ParafoilParams& p, const Wind& w, double dt) {
  // Bank is constant over the step, so only the heading-dependent terms vary
  // between stages.
  const GlideTerms g = glide_terms(phi, p, w);
  auto rate = [&](double psi, double& dx, double& dy) {
    dx = g.horizontal * std::cos(psi) + w.wx;
    dy = -g.horizontal * std::sin(psi) + w.wy;
  };
  double dx1, dy1, dx2, dy2, dx3, dy3, dx4, dy4;
  rate(s.psi, dx1, dy1);
  rate(s.psi + 0.5 * dt * g.turn_rate, dx2, dy2);
  rate(s.psi + 0.5 * dt * g.turn_rate, dx3, dy3);
  rate(s.psi + dt * g.turn_rate, dx4, dy4);

  ParafoilState out;
  out.x = s.x + dt / 6.0 * (dx1 + 2.0 * dx2 + 2.0 * dx3 + dx4);
  out.y = s.y + dt / 6.0 * (dy1 + 2.0 * dy2 + 2.0 * dy3 + dy4);
  out.h = s.h + dt * g.vertical;
  out.psi = wrap_angle(s.psi + dt * g.turn_rate);
  return out;
}

ParafoilState analytic_constant_control(const ParafoilState& s0, double phi, double t, const ParafoilParams& p,
                                        const Wind& w) {
  const GlideTerms g = glide_terms(phi, p, w);
  ParafoilState out;
  out.h = s0.h + g.vertical * t;
  out.psi = wrap_angle(s0.psi + g.turn_rate * t);
  if (std::abs(g.turn_rate) < 1e-12) {
    out.x = s0.x + (g.horizontal * std::cos(s0.psi) + w.wx) * t;
    out.y = s0.y + (-g.horizontal * std::sin(s0.psi) + w.wy) * t;
    return out;
  }
  const double psi_t = s0.psi + g.turn_rate * t;
  const double radius = g.horizontal / g.turn_rate;
  out.x = s0.x + radius * (std::sin(psi_t) - std::sin(s0.psi)) + w.wx * t;
  out.y = s0.y + radius * (std::cos(psi_t) - std::cos(s0.psi)) + w.wy * t;
  return out;
}

double anti_wind_heading(const Wind& w) {
  if (w.horizontal_magnitude() == 0.0) throw NoWindDirection("zero horizontal wind has no heading");
  return wrap_angle(std::atan2(w.wy, -w.wx));
}

double final_approach_bank(double psi, double wind_heading, double bank_limit) {
  return std::clamp(0.5 * wrap_angle(psi - wind_heading), -bank_limit, bank_limit);
}

double applied_bank(const ParafoilState& s, const ControlSegment& seg, const std::optional<ApproachLaw>& law) {
  if (law && (seg.is_approach_law || s.h <= law->threshold_h))
    return final_approach_bank(s.psi, law->wind_heading, law->bank_limit);
  return seg.phi;
}

Propagation propagate(const ParafoilState& s0, const ControlSegment& seg, const ParafoilParams& p, const Wind& w,
                      double step, const std::optional<ApproachLaw>& law) {
  Propagation out;
  out.path.push_back({0.0, s0});
  out.termination = propagate_visit(s0, seg, p, w, step, law, [&](double t, const ParafoilState& s, double phi, double dt) {
    out.path.push_back({t, s});
    out.controls.push_back(phi);
    out.cost += phi * phi * dt;
    return true;
  });
  return out;
}

}  // namespace parafoil
