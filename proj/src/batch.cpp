#include "parafoil/batch.hpp"

#include <cmath>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace parafoil {

std::vector<SeedResult> run_seeds(const Scenario& scenario, const PlannerConfig& base,
                                  std::span<const std::uint64_t> seeds, Execution execution) {
  scenario.validate();
  base.validate();
  std::vector<SeedResult> out(seeds.size());
  auto run_one = [&](std::size_t i) {
    PlannerConfig config = base;
    config.seed = seeds[i];
    out[i] = {seeds[i], plan(scenario, config)};
  };

  if (execution == Execution::serial) {
    for (std::size_t i = 0; i < seeds.size(); ++i) run_one(i);
    return out;
  }

  std::vector<std::exception_ptr> errors(seeds.size());
  const auto n = static_cast<std::int64_t>(seeds.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      run_one(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<std::uint64_t> seed_range(std::uint64_t first, std::size_t count) {
  std::vector<std::uint64_t> seeds(count);
  for (std::size_t i = 0; i < count; ++i) seeds[i] = first + i;
  return seeds;
}

int parallel_workers() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::optional<double> best_cost_at(std::span<const CostImprovement> history, double checkpoint, BudgetUnit unit) {
  std::optional<double> best;
  for (const CostImprovement& c : history) {
    const double at = unit == BudgetUnit::seconds ? c.elapsed : static_cast<double>(c.iteration);
    if (at > checkpoint) break;
    best = c.cost;
  }
  return best;
}

std::vector<CheckpointSummary> summarize_checkpoints(std::span<const SeedResult> runs, std::span<const double> budgets,
                                                     BudgetUnit unit) {
  std::vector<CheckpointSummary> rows;
  for (double budget : budgets) {
    CheckpointSummary row;
    row.budget = budget;
    for (const SeedResult& r : runs) {
      const auto best = best_cost_at(r.result.history, budget, unit);
      row.outcomes.push_back({best.has_value(), best.value_or(0.0)});
    }
    row.summary = summarize_batch(row.outcomes);
    rows.push_back(std::move(row));
  }
  return rows;
}

SensitivityParameter parse_sensitivity_parameter(std::string_view name) {
  if (name == "wind_mag") return SensitivityParameter::wind_magnitude;
  if (name == "wind_dir") return SensitivityParameter::wind_direction;
  if (name == "init_pos") return SensitivityParameter::initial_position;
  if (name == "init_heading") return SensitivityParameter::initial_heading;
  throw ConfigError("unknown sensitivity parameter '" + std::string(name) +
                    "' (expected wind_mag, wind_dir, init_pos or init_heading)");
}

Scenario vary_scenario(const Scenario& base, SensitivityParameter parameter, double value) {
  Scenario s = base;
  switch (parameter) {
    case SensitivityParameter::wind_magnitude: {
      if (!(value >= 0.0)) throw ConfigError("wind magnitude must be non-negative");
      const double m = base.wind.horizontal_magnitude();
      const double ux = m > 0.0 ? base.wind.wx / m : -1.0;
      const double uy = m > 0.0 ? base.wind.wy / m : 0.0;
      s.wind.wx = value * ux;
      s.wind.wy = value * uy;
      break;
    }
    case SensitivityParameter::wind_direction: {
      const double m = base.wind.horizontal_magnitude();
      s.wind.wx = m * std::cos(value);
      s.wind.wy = m * std::sin(value);
      break;
    }
    case SensitivityParameter::initial_position: {
      const Vec3 c = base.goal.box.center();
      const double range = std::hypot(base.initial.x - c.x, base.initial.y - c.y);
      s.initial.x = c.x + range * std::cos(value);
      s.initial.y = c.y + range * std::sin(value);
      break;
    }
    case SensitivityParameter::initial_heading:
      s.initial.psi = wrap_angle(value);
      break;
  }
  s.validate();
  return s;
}

}  // namespace parafoil
