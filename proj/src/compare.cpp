#include "parafoil/compare.hpp"

#include <algorithm>
#include <cmath>

#include "parafoil/trajectory_io.hpp"

namespace parafoil {

std::size_t comparison_start(const NedTrack& ned, double altitude) {
  for (std::size_t i = 0; i < ned.samples.size(); ++i)
    if (ned.samples[i].h <= altitude) return i;
  return 0;
}

Scenario scenario_from_track(const NedTrack& ned, std::size_t start_index, const WindEstimate& wind,
                             const CompareOptions& options) {
  const NedSample& start = ned.samples.at(start_index);
  Scenario s;
  s.initial = {start.x, start.y, start.h, wrap_angle(start.psi)};
  s.params = options.params;
  s.wind = {wind.wx, wind.wy, 0.0};

  double x_lo = -options.goal_half_width, x_hi = options.goal_half_width;
  double y_lo = x_lo, y_hi = x_hi;
  for (std::size_t i = start_index; i < ned.samples.size(); ++i) {
    x_lo = std::min(x_lo, ned.samples[i].x);
    x_hi = std::max(x_hi, ned.samples[i].x);
    y_lo = std::min(y_lo, ned.samples[i].y);
    y_hi = std::max(y_hi, ned.samples[i].y);
  }
  s.bounds = {x_lo - options.bounds_margin, x_hi + options.bounds_margin, y_lo - options.bounds_margin,
              y_hi + options.bounds_margin, 0.0, std::max(start.h, options.start_altitude)};
  s.goal.box = {-options.goal_half_width, options.goal_half_width, -options.goal_half_width, options.goal_half_width,
                0.0, options.goal_height};
  s.validate();
  return s;
}

namespace {

// Shared front half of both comparison flavours. Returns false when the log
// cannot support a comparison; the reason is left in report.data_error.
bool analyse_human(const FlightTrack& track, const CompareOptions& options, ComparisonReport& report) {
  report.ned = to_ned(track, options.landing_ref.value_or(default_landing_ref(track)));
  try {
    report.wind = estimate_wind(report.ned);
  } catch (const FlightDataError& e) {
    report.data_error = std::string("wind estimation failed: ") + e.what();
    return false;
  }
  report.start_index = comparison_start(report.ned, options.start_altitude);

  NedTrack tail = report.ned;
  tail.samples.assign(report.ned.samples.begin() + static_cast<std::ptrdiff_t>(report.start_index),
                      report.ned.samples.end());
  try {
    report.bank = reconstruct_bank(tail, options.params, report.wind->airspeed_estimate);
    report.human_curve = human_cost_curve(report.bank);
  } catch (const std::exception& e) {
    report.data_error = std::string("bank reconstruction failed: ") + e.what();
    return false;
  }
  report.human_duration = report.bank.back().t - report.bank.front().t;
  if (!(report.human_curve->final_cost() > 0.0)) {
    report.data_error = "human flight has zero control effort; ROG is undefined";
    return false;
  }
  return true;
}

void finish_rog(ComparisonReport& report, const std::vector<TrajectorySample>& trajectory, const CompareOptions& options) {
  if (trajectory.size() < 2 || !(trajectory.back().t > trajectory.front().t)) {
    report.planner_curve = CostCurve{{0.0, 1.0}, {0.0, 0.0}};
  } else {
    report.planner_curve = trajectory_cost_curve(trajectory);
  }
  const double algorithm_duration = trajectory.back().t - trajectory.front().t;
  if (options.real_time && algorithm_duration > 0.0 && report.human_duration > 0.0)
    report.rog = rog_curve_real_time(*report.human_curve, report.human_duration, *report.planner_curve,
                                     algorithm_duration, options.rog_grid);
  else
    report.rog = rog_curve(*report.human_curve, *report.planner_curve, options.rog_grid);
  report.final_rog = rog(*report.human_curve, *report.planner_curve, 1.0);
}

}  // namespace

ComparisonReport compare_flight(const FlightTrack& track, const CompareOptions& options) {
  ComparisonReport report;
  if (!analyse_human(track, options, report)) return report;

  report.scenario = scenario_from_track(report.ned, report.start_index, *report.wind, options);
  const auto seeds = seed_range(options.planner.seed, options.runs);
  auto runs = run_seeds(*report.scenario, options.planner, seeds, options.execution);
  report.planner_runs = runs.size();
  for (auto& r : runs) {
    if (!r.result.solution) continue;
    ++report.planner_successes;
    if (!report.best || r.result.solution->total_cost < report.best->result.solution->total_cost) report.best = std::move(r);
  }
  if (report.best) finish_rog(report, report.best->result.solution->samples, options);
  return report;
}

ComparisonReport compare_flight_to_trajectory(const FlightTrack& track, const std::vector<TrajectorySample>& trajectory,
                                              const CompareOptions& options) {
  ComparisonReport report;
  if (!analyse_human(track, options, report)) return report;
  report.scenario = scenario_from_track(report.ned, report.start_index, *report.wind, options);
  finish_rog(report, trajectory, options);
  return report;
}

}  // namespace parafoil
