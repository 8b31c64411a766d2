#pragma once

#include <optional>
#include <string>
#include <vector>

#include "parafoil/batch.hpp"
#include "parafoil/flightdata.hpp"
#include "parafoil/metrics.hpp"
#include "parafoil/planner.hpp"

namespace parafoil {

struct CompareOptions {
  std::optional<GeoPoint> landing_ref;  // defaults to the last fix
  ParafoilParams params{15.0, 3.0, 9.81};
  PlannerConfig planner;  // seed is the first of `runs` consecutive seeds
  std::size_t runs = 10;
  /// The comparison starts at the first fix at or below this altitude [m].
  double start_altitude = 1000.0;
  double goal_half_width = 200.0;
  double goal_height = 5.0;
  double bounds_margin = 1000.0;
  std::size_t rog_grid = 101;
  /// Compare at equal elapsed time instead of equal normalized time.
  bool real_time = false;
  Execution execution = Execution::parallel;
};

struct ComparisonReport {
  NedTrack ned;
  std::size_t start_index = 0;
  std::optional<WindEstimate> wind;
  std::string data_error;  // set when the log cannot support a comparison

  std::vector<BankSample> bank;  // from start_index to the end of the log
  std::optional<CostCurve> human_curve;
  double human_duration = 0.0;

  std::optional<Scenario> scenario;
  std::size_t planner_runs = 0;
  std::size_t planner_successes = 0;
  std::optional<SeedResult> best;  // cheapest successful run
  std::optional<CostCurve> planner_curve;
  std::vector<RogPoint> rog;
  std::optional<double> final_rog;
};

/// Index of the first sample at or below `altitude` (0 when none qualifies).
std::size_t comparison_start(const NedTrack& ned, double altitude);

/// Planning problem matching a recorded flight: starts at the comparison
/// start, constant estimated wind, goal box around the landing point.
Scenario scenario_from_track(const NedTrack& ned, std::size_t start_index, const WindEstimate& wind,
                             const CompareOptions& options);

/// Full pipeline: NED conversion, wind estimate, bank reconstruction, human
/// cost, best-of-N planning and ROG. Data-quality problems are reported in
/// `data_error` instead of thrown.
ComparisonReport compare_flight(const FlightTrack& track, const CompareOptions& options);

/// Same pipeline, but against an existing trajectory instead of new plans.
ComparisonReport compare_flight_to_trajectory(const FlightTrack& track, const std::vector<TrajectorySample>& trajectory,
                                              const CompareOptions& options);

}  // namespace parafoil
