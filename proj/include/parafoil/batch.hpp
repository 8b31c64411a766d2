#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "parafoil/metrics.hpp"
#include "parafoil/planner.hpp"

namespace parafoil {

enum class Execution { serial, parallel };

struct SeedResult {
  std::uint64_t seed = 0;
  PlanResult result;
};

/// Runs one independent planner per seed. The parallel path fans out over
/// OpenMP threads; results are ordered by position in `seeds` either way, so
/// with an iteration budget both paths return identical results.
std::vector<SeedResult> run_seeds(const Scenario& scenario, const PlannerConfig& base,
                                  std::span<const std::uint64_t> seeds, Execution execution = Execution::parallel);

std::vector<std::uint64_t> seed_range(std::uint64_t first, std::size_t count);

/// Number of worker threads the parallel path would use.
int parallel_workers();

enum class BudgetUnit { seconds, iterations };

/// Best solution cost reported at or before `checkpoint` during one anytime run.
std::optional<double> best_cost_at(std::span<const CostImprovement> history, double checkpoint, BudgetUnit unit);

struct CheckpointSummary {
  double budget = 0.0;
  BatchSummary summary;
  std::vector<RunOutcome> outcomes;  // one per seed, in seed order
};

std::vector<CheckpointSummary> summarize_checkpoints(std::span<const SeedResult> runs, std::span<const double> budgets,
                                                     BudgetUnit unit);

enum class SensitivityParameter { wind_magnitude, wind_direction, initial_position, initial_heading };

/// Accepts wind_mag, wind_dir, init_pos and init_heading; throws ConfigError otherwise.
SensitivityParameter parse_sensitivity_parameter(std::string_view name);

/// Copy of `base` with one flight-day parameter replaced:
///  - wind magnitude [m/s], keeping the wind direction (-x when the base wind is calm);
///  - wind direction [rad], the angle of the wind vector from +x toward +y, keeping the magnitude;
///  - initial position as a bearing [rad] around the goal centre at the base range;
///  - initial heading [rad].
Scenario vary_scenario(const Scenario& base, SensitivityParameter parameter, double value);

}  // namespace parafoil
