#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace parafoil {

class MetricError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Cumulative control effort over normalized time, linear between knots.
struct CostCurve {
  std::vector<double> tau;   // strictly increasing, 0 first, 1 last
  std::vector<double> cost;  // non-decreasing, 0 first

  double at(double t) const;
  double final_cost() const { return cost.back(); }
  /// Throws MetricError when the knot invariants do not hold.
  void validate() const;
};

struct TimedCost {
  double t = 0.0;
  double cost = 0.0;
};

/// Maps `raw` onto tau = (t - t0) / (tf - t0). The curve is clipped to
/// [t0, tf], shifted so that it starts at zero, and pinned at both ends.
CostCurve normalize_curve(std::span<const TimedCost> raw, double t0, double tf);

/// Relative optimality gap (c_h(tau) - c_a(tau)) / c_h(1).
double rog(const CostCurve& human, const CostCurve& algorithm, double tau);

struct RogPoint {
  double tau = 0.0;
  double rog = 0.0;
};

/// ROG on a uniform grid of `grid_size` points from 0 to 1 inclusive.
std::vector<RogPoint> rog_curve(const CostCurve& human, const CostCurve& algorithm, std::size_t grid_size);

/// ROG with both curves evaluated at the same elapsed time instead of the
/// same fraction of their own flights. Each curve is stretched to its real
/// duration; the shorter one is held at its final cost afterwards.
std::vector<RogPoint> rog_curve_real_time(const CostCurve& human, double human_duration, const CostCurve& algorithm,
                                          double algorithm_duration, std::size_t grid_size);

struct RunOutcome {
  bool success = false;
  double cost = 0.0;
};

struct Quantiles {
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

struct BatchSummary {
  std::size_t runs = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  std::optional<Quantiles> cost;  // over successful runs only
};

/// Linear-interpolation quantile (position q * (n - 1) in the sorted sample).
double quantile(std::vector<double> values, double q);

BatchSummary summarize_batch(std::span<const RunOutcome> results);

}  // namespace parafoil
