#include "parafoil/trajectory_io.hpp"

#include <charconv>
#include <cstdio>

namespace parafoil {

std::string write_trajectory_csv(std::span<const TrajectorySample> samples) {
  std::string out = "t,x,y,h,psi,phi\n";
  char line[256];
  for (const TrajectorySample& s : samples) {
    std::snprintf(line, sizeof line, "%.6f,%.6f,%.6f,%.6f,%.9f,%.9f\n", s.t, s.state.x, s.state.y, s.state.h,
                  s.state.psi, s.phi);
    out += line;
  }
  return out;
}

std::vector<TrajectorySample> parse_trajectory_csv(std::string_view text) {
  std::vector<TrajectorySample> out;
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "t,x,y,h,psi,phi") throw ConfigError("trajectory CSV: expected header t,x,y,h,psi,phi");
      continue;
    }
    double v[6];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int i = 0; i < 6; ++i) {
      const auto [ptr, ec] = std::from_chars(p, end, v[i]);
      if (ec != std::errc() || (i < 5 && (ptr == end || *ptr != ',')) || (i == 5 && ptr != end))
        throw ConfigError("trajectory CSV: malformed line " + std::to_string(line_no));
      p = ptr + 1;
    }
    out.push_back({v[0], {v[1], v[2], v[3], v[4]}, v[5]});
  }
  if (out.empty()) throw ConfigError("trajectory CSV: no samples");
  return out;
}

std::string write_controls_csv(std::span<const ControlSegment> segments) {
  std::string out = "index,start_time,duration,phi,approach_law\n";
  char line[160];
  double t = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const ControlSegment& s = segments[i];
    std::snprintf(line, sizeof line, "%zu,%.2f,%.2f,%.9f,%d\n", i, t, s.duration, s.phi, s.is_approach_law ? 1 : 0);
    out += line;
    t += s.duration;
  }
  return out;
}

std::string write_cost_curve_csv(const CostCurve& curve) {
  std::string out = "tau,cost\n";
  char line[96];
  for (std::size_t i = 0; i < curve.tau.size(); ++i) {
    std::snprintf(line, sizeof line, "%.6f,%.9f\n", curve.tau[i], curve.cost[i]);
    out += line;
  }
  return out;
}

std::string write_rog_csv(std::span<const RogPoint> points) {
  std::string out = "tau,rog\n";
  char line[96];
  for (const RogPoint& p : points) {
    std::snprintf(line, sizeof line, "%.6f,%.9f\n", p.tau, p.rog);
    out += line;
  }
  return out;
}

CostCurve trajectory_cost_curve(std::span<const TrajectorySample> samples) {
  if (samples.size() < 2) throw MetricError("trajectory too short for a cost curve");
  std::vector<TimedCost> raw;
  raw.reserve(samples.size());
  double acc = 0.0;
  raw.push_back({samples.front().t, 0.0});
  for (std::size_t i = 1; i < samples.size(); ++i) {
    acc += samples[i - 1].phi * samples[i - 1].phi * (samples[i].t - samples[i - 1].t);
    raw.push_back({samples[i].t, acc});
  }
  return normalize_curve(raw, samples.front().t, samples.back().t);
}

}  // namespace parafoil
