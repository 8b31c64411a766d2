#include "parafoil/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace parafoil {

namespace {

double interpolate(std::span<const double> xs, std::span<const double> ys, double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto hi = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
  const std::size_t lo = hi - 1;
  const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + w * (ys[hi] - ys[lo]);
}

double raw_cost_at(std::span<const TimedCost> raw, double t) {
  if (t <= raw.front().t) return raw.front().cost;
  if (t >= raw.back().t) return raw.back().cost;
  const auto it = std::upper_bound(raw.begin(), raw.end(), t, [](double v, const TimedCost& c) { return v < c.t; });
  const TimedCost& b = *it;
  const TimedCost& a = *(it - 1);
  if (b.t == a.t) return b.cost;
  return a.cost + (t - a.t) / (b.t - a.t) * (b.cost - a.cost);
}

}  // namespace

double CostCurve::at(double t) const { return interpolate(tau, cost, t); }

void CostCurve::validate() const {
  if (tau.size() < 2 || tau.size() != cost.size()) throw MetricError("cost curve needs at least two knots");
  if (tau.front() != 0.0 || tau.back() != 1.0) throw MetricError("cost curve must span tau in [0, 1]");
  if (cost.front() != 0.0) throw MetricError("cost curve must start at zero cost");
  for (std::size_t i = 1; i < tau.size(); ++i) {
    if (!(tau[i] > tau[i - 1])) throw MetricError("cost curve tau must be strictly increasing");
    if (cost[i] < cost[i - 1]) throw MetricError("cost curve must be non-decreasing");
  }
}

CostCurve normalize_curve(std::span<const TimedCost> raw, double t0, double tf) {
  if (!(tf > t0)) throw MetricError("normalize_curve: degenerate interval (tf <= t0)");
  if (raw.empty()) throw MetricError("normalize_curve: empty series");
  const double base = raw_cost_at(raw, t0);
  const double span = tf - t0;

  CostCurve c;
  c.tau.push_back(0.0);
  c.cost.push_back(0.0);
  for (const TimedCost& p : raw) {
    if (p.t <= t0 || p.t >= tf) continue;
    const double tau = (p.t - t0) / span;
    if (!(tau > c.tau.back())) continue;
    c.tau.push_back(tau);
    c.cost.push_back(std::max(p.cost - base, c.cost.back()));
  }
  c.tau.push_back(1.0);
  c.cost.push_back(std::max(raw_cost_at(raw, tf) - base, c.cost.back()));
  return c;
}

double rog(const CostCurve& human, const CostCurve& algorithm, double tau) {
  const double denom = human.final_cost();
  if (!(denom > 0.0)) throw MetricError("ROG undefined: human final cost is zero");
  if (!(tau >= 0.0 && tau <= 1.0)) throw MetricError("ROG: tau must lie in [0, 1]");
  if (tau == 1.0) return 1.0 - algorithm.final_cost() / denom;
  return (human.at(tau) - algorithm.at(tau)) / denom;
}

std::vector<RogPoint> rog_curve(const CostCurve& human, const CostCurve& algorithm, std::size_t grid_size) {
  if (grid_size < 2) throw MetricError("rog_curve: grid_size must be at least 2");
  std::vector<RogPoint> out;
  out.reserve(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double tau = (i + 1 == grid_size) ? 1.0 : static_cast<double>(i) / static_cast<double>(grid_size - 1);
    out.push_back({tau, rog(human, algorithm, tau)});
  }
  return out;
}

std::vector<RogPoint> rog_curve_real_time(const CostCurve& human, double human_duration, const CostCurve& algorithm,
                                          double algorithm_duration, std::size_t grid_size) {
  if (grid_size < 2) throw MetricError("rog_curve: grid_size must be at least 2");
  if (!(human_duration > 0.0 && algorithm_duration > 0.0)) throw MetricError("rog_curve: durations must be positive");
  const double denom = human.final_cost();
  if (!(denom > 0.0)) throw MetricError("ROG undefined: human final cost is zero");
  const double horizon = std::max(human_duration, algorithm_duration);
  std::vector<RogPoint> out;
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double tau = (i + 1 == grid_size) ? 1.0 : static_cast<double>(i) / static_cast<double>(grid_size - 1);
    const double t = tau * horizon;
    const double ch = human.at(std::min(1.0, t / human_duration));
    const double ca = algorithm.at(std::min(1.0, t / algorithm_duration));
    out.push_back({tau, (ch - ca) / denom});
  }
  return out;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw MetricError("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

BatchSummary summarize_batch(std::span<const RunOutcome> results) {
  BatchSummary s;
  s.runs = results.size();
  std::vector<double> costs;
  for (const RunOutcome& r : results)
    if (r.success) costs.push_back(r.cost);
  s.successes = costs.size();
  s.success_rate = s.runs == 0 ? 0.0 : static_cast<double>(s.successes) / static_cast<double>(s.runs);
  if (!costs.empty())
    s.cost = Quantiles{quantile(costs, 0.0), quantile(costs, 0.25), quantile(costs, 0.5), quantile(costs, 0.75),
                       quantile(costs, 1.0)};
  return s;
}

}  // namespace parafoil
