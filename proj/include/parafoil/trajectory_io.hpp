#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "parafoil/metrics.hpp"
#include "parafoil/planner.hpp"

namespace parafoil {

/// Columns t,x,y,h,psi,phi.
std::string write_trajectory_csv(std::span<const TrajectorySample> samples);
/// Parses the format written by write_trajectory_csv; throws ConfigError.
std::vector<TrajectorySample> parse_trajectory_csv(std::string_view text);

/// Columns index,start_time,duration,phi,approach_law.
std::string write_controls_csv(std::span<const ControlSegment> segments);

/// Columns tau,cost.
std::string write_cost_curve_csv(const CostCurve& curve);
/// Columns tau,rog.
std::string write_rog_csv(std::span<const RogPoint> points);

/// Cumulative phi^2 dt along a sampled trajectory on normalized time.
CostCurve trajectory_cost_curve(std::span<const TrajectorySample> samples);

}  // namespace parafoil
