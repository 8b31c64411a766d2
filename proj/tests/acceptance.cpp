// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failures.
//
// Planner budgets are given in iterations (deterministic) and mapped from the
// nominal seconds at 10k iterations per second; the nominal seconds are kept
// as a wall-clock cap.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "parafoil/batch.hpp"
#include "parafoil/compare.hpp"
#include "parafoil/human_pilot.hpp"
#include "parafoil/scenario_io.hpp"
#include "parafoil/trajectory_io.hpp"
#include "planner_checks.hpp"

using namespace parafoil;

namespace {

constexpr double kItersPerSecond = 10000.0;

int failures = 0;

void report(bool ok, const char* name, const std::string& detail) {
  std::printf("%s  %-28s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

Scenario load(const char* name) { return load_scenario(std::string(SCENARIO_DIR) + "/" + name); }

PlannerConfig budgeted(double seconds) {
  PlannerConfig c;
  c.time_budget = seconds;
  c.max_iterations = static_cast<std::uint64_t>(seconds * kItersPerSecond);
  return c;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- sample run --------------------------------------------------------------

std::vector<SeedResult> sample_runs;

void sample_run_feasibility() {
  const Scenario sc = load("sample_run.json");
  const auto t0 = std::chrono::steady_clock::now();
  sample_runs = run_seeds(sc, budgeted(40), seed_range(1, 10));
  const double lambda = std::atan2(sc.wind.wy, -sc.wind.wx);
  int good = 0;
  std::string costs;
  for (const auto& r : sample_runs) {
    bool ok = false;
    if (r.result.solution) {
      const auto& sol = *r.result.solution;
      std::vector<TimedState> path;
      for (const auto& s : sol.samples) path.push_back({s.t, s.state});
      const bool free = path_collision_free(path, sc.obstacles, sc.bounds);
      const bool goal = in_goal(sol.samples.back().state, sc.goal);
      const double heading_err = std::abs(oracle::angle_diff(sol.samples.back().state.psi, lambda));
      ok = free && goal && heading_err <= 15.0 * oracle::pi / 180.0;
      costs += format(" %.3f", sol.total_cost);
    } else {
      costs += " -";
    }
    good += ok;
  }
  report(good >= 9, "sample-run feasibility",
         format("%d/10 valid (collision-free, in goal, heading within 15 deg); costs%s; %.1f s", good, costs.c_str(),
                seconds_since(t0)));
}

// --- anytime -----------------------------------------------------------------

void anytime_behaviour() {
  Scenario sc = load("sample_run.json");
  sc.params.speed = 15.0;
  const auto runs = run_seeds(sc, budgeted(50), seed_range(1, 10));
  const std::vector<double> checkpoints = {10 * kItersPerSecond, 30 * kItersPerSecond, 50 * kItersPerSecond};
  const auto rows = summarize_checkpoints(runs, checkpoints, BudgetUnit::iterations);
  const auto& first = rows.front();
  const auto& last = rows.back();
  bool monotone = true;
  for (std::size_t s = 0; s < runs.size(); ++s)
    if (first.outcomes[s].success && !(last.outcomes[s].success && last.outcomes[s].cost <= first.outcomes[s].cost))
      monotone = false;
  const bool medians = first.summary.cost && last.summary.cost && last.summary.cost->median <= first.summary.cost->median;
  const bool rate = last.summary.success_rate >= 0.9;
  std::string detail;
  for (const auto& r : rows)
    detail += format("[%gs: rate %.2f median %s] ", r.budget / kItersPerSecond, r.summary.success_rate,
                     r.summary.cost ? format("%.3f", r.summary.cost->median).c_str() : "-");
  report(rate && monotone && medians, "anytime behaviour",
         detail + format("per-seed monotone %s", monotone ? "yes" : "no"));
}

// --- wind sensitivity --------------------------------------------------------

void wind_trend() {
  const Scenario base = load("sensitivity_base.json");
  std::vector<double> rates;
  for (double m : {4.0, 8.0, 12.0}) {
    const Scenario sc = vary_scenario(base, SensitivityParameter::wind_magnitude, m);
    std::vector<RunOutcome> out;
    for (const auto& r : run_seeds(sc, budgeted(10), seed_range(1, 20)))
      out.push_back({r.result.solution.has_value(), r.result.solution ? r.result.solution->total_cost : 0.0});
    rates.push_back(summarize_batch(out).success_rate);
  }
  report(rates[0] >= rates[2] && rates[0] - rates[2] >= 0.3, "wind-magnitude trend",
         format("success rate 4 m/s %.2f, 8 m/s %.2f, 12 m/s %.2f", rates[0], rates[1], rates[2]));
}

// --- dynamics ----------------------------------------------------------------

void dynamics_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const ParafoilParams p{15.0, 3.0, 9.81};
  const ParafoilState s0{10.0, -20.0, 2000.0, 0.3};
  double pos_err = 0, psi_err = 0, glide_err = 0, wind_err = 0;
  for (double phi : {0.0, 0.1, -0.1, oracle::pi / 6, -oracle::pi / 6}) {
    for (const Wind& w : {Wind{0, 0, 0}, Wind{-3, -3, 0}}) {
      const Propagation prop = propagate(s0, {phi, 100.0, false}, p, w);
      for (std::size_t i = 0; i < prop.path.size(); i += 20) {
        const double t = prop.path[i].t;
        const ParafoilState& s = prop.path[i].state;
        const ParafoilState a = analytic_constant_control(s0, phi, t, p, w);
        const auto o = oracle::constant_bank({s0.x, s0.y, s0.h, s0.psi}, phi, t, p.speed, p.glide_ratio, p.g, w.wx,
                                             w.wy, w.wh);
        for (const ParafoilState ref : {a, ParafoilState{o.x, o.y, o.h, wrap_angle(o.psi)}}) {
          pos_err = std::max({pos_err, std::abs(s.x - ref.x), std::abs(s.y - ref.y), std::abs(s.h - ref.h)});
          psi_err = std::max(psi_err, std::abs(oracle::angle_diff(s.psi, ref.psi)));
        }
      }
    }
    // wind additivity
    const Wind w{-3, -3, 0.5};
    const Propagation calm = propagate(s0, {phi, 100.0, false}, p, {});
    const Propagation windy = propagate(s0, {phi, 100.0, false}, p, w);
    for (std::size_t i = 0; i < calm.path.size(); ++i) {
      const double t = calm.path[i].t;
      const auto& a = calm.path[i].state;
      const auto& b = windy.path[i].state;
      wind_err = std::max({wind_err, std::abs(a.x + w.wx * t - b.x), std::abs(a.y + w.wy * t - b.y),
                           std::abs(a.h + w.wh * t - b.h), std::abs(a.psi - b.psi)});
    }
  }
  const Propagation straight = propagate(s0, {0.0, 100.0, false}, p, {});
  const auto& end = straight.path.back().state;
  glide_err = std::abs(std::hypot(end.x - s0.x, end.y - s0.y) / (s0.h - end.h) - p.glide_ratio);
  const double elapsed = seconds_since(t0);
  const bool ok = pos_err < 1e-6 && psi_err < 1e-8 && glide_err < 1e-9 && wind_err < 1e-9 && elapsed < 1.0;
  report(ok, "dynamics oracle",
         format("max |dpos| %.2e m, |dpsi| %.2e rad, glide ratio err %.1e, wind additivity err %.1e, %.3f s", pos_err,
                psi_err, glide_err, wind_err, elapsed));
}

// --- planner invariants ------------------------------------------------------

void planner_self_consistency() {
  const Scenario sc = load("sample_run.json");
  std::string problems;
  int solved = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    PlannerConfig cfg = budgeted(10);
    cfg.time_budget = 0;  // iteration budget only, so the rerun is comparable
    cfg.seed = seed;
    SstPlanner a(sc, cfg), b(sc, cfg);
    const PlanResult ra = a.solve(), rb = b.solve();
    std::vector<std::string> found;
    if (ra.solution) {
      ++solved;
      found.push_back(checks::repropagation(sc, *ra.solution, a.threshold_h()));
      found.push_back(checks::solution_valid(sc, *ra.solution));
      found.push_back(checks::cost_recomputation(*ra.solution));
      found.push_back(checks::below_threshold_law(sc, *ra.solution, a.threshold_h()));
    }
    found.push_back(checks::anytime_monotone(ra));
    found.push_back(checks::witness_sparsity(a.witnesses()));
    found.push_back(checks::tree_consistency(a));
    if (!checks::same_solution(ra, rb) || !checks::same_tree(a.tree(), b.tree())) found.push_back("rerun differs");
    for (const auto& f : found)
      if (!f.empty()) problems += format(" seed %llu: %s;", static_cast<unsigned long long>(seed), f.c_str());
  }
  report(problems.empty() && solved == 5, "planner self-consistency",
         format("%d/5 runs solved%s", solved, problems.empty() ? ", all invariants hold" : problems.c_str()));
}

// --- ROG ---------------------------------------------------------------------

CostCurve random_curve(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> knots(0, 20);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> taus(static_cast<std::size_t>(knots(rng)));
  for (double& t : taus) t = u(rng);
  std::sort(taus.begin(), taus.end());
  CostCurve c{{0.0}, {0.0}};
  for (double t : taus)
    if (t > c.tau.back() && t < 1.0) {
      c.tau.push_back(t);
      c.cost.push_back(c.cost.back() + (u(rng) < 0.2 ? 0.0 : 5.0 * u(rng)));
    }
  c.tau.push_back(1.0);
  c.cost.push_back(c.cost.back() + 1e-3 + 5.0 * u(rng));
  return c;
}

void rog_identities() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int bad = 0;
  double worst_scale = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const CostCurve h = random_curve(rng), a = random_curve(rng);
    h.validate();
    a.validate();
    const double tau = i % 10 == 0 ? 1.0 : u(rng);
    const double k = std::exp(8.0 * u(rng) - 4.0);
    CostCurve hk = h, ak = a;
    for (double& c : hk.cost) c *= k;
    for (double& c : ak.cost) c *= k;
    const double scale = std::abs(rog(hk, ak, tau) - rog(h, a, tau));
    worst_scale = std::max(worst_scale, scale);
    if (rog(h, h, tau) != 0.0 || scale > 1e-12 || rog(h, a, 1.0) != 1.0 - a.final_cost() / h.final_cost()) ++bad;
  }
  report(bad == 0, "ROG identities", format("1000 random cases, %d violations, worst scale drift %.1e", bad, worst_scale));
}

// --- data pipeline -----------------------------------------------------------

struct RoundTrip {
  double wind_dx = 0, wind_dy = 0, rms_away = 0, rms_all = 0, self_rog = NAN;
  std::string error;
};

RoundTrip round_trip(const Scenario& sc, const SolutionTrajectory& sol) {
  RoundTrip out;
  const GeoPoint ref{33.63, -117.25, 400.0};
  const auto ned = trajectory_to_ned(sol.samples, sc.params, sc.wind, 0.2);
  const FlightTrack track = parse_flysight_csv(write_flysight_csv(to_flight_samples(ned, ref, 1.7e9)));
  const NedTrack back = to_ned(track, ref);
  try {
    const WindEstimate w = estimate_wind(back);
    out.wind_dx = w.wx - sc.wind.wx;
    out.wind_dy = w.wy - sc.wind.wy;
    const auto bank = reconstruct_bank(back, sc.params, w.airspeed_estimate);

    // Truth is the bank held over the integrator step containing each fix.
    // Fixes within one smoothing half-width of a bank step change are
    // scored separately: the moving average cannot resolve a step.
    std::vector<double> switches;
    double t = 0.0;
    for (const auto& seg : sol.segments) {
      if (!seg.is_approach_law) switches.push_back(t);
      t += seg.duration;
    }
    switches.push_back(t);
    double se_away = 0, se_all = 0;
    std::size_t n_away = 0;
    for (const auto& b : bank) {
      const auto k = std::min(sol.samples.size() - 1, static_cast<std::size_t>(std::floor(b.t / kIntegrationStep + 1e-6)));
      const double e = b.phi - sol.samples[k].phi;
      se_all += e * e;
      const bool near = std::any_of(switches.begin(), switches.end(), [&](double s) { return std::abs(b.t - s) < 1.0; });
      if (near) continue;
      se_away += e * e;
      ++n_away;
    }
    out.rms_all = std::sqrt(se_all / static_cast<double>(bank.size()));
    out.rms_away = std::sqrt(se_away / static_cast<double>(n_away));

    CompareOptions o;
    o.params = sc.params;
    o.landing_ref = ref;
    o.start_altitude = 1e9;
    const ComparisonReport rep = compare_flight_to_trajectory(track, sol.samples, o);
    if (rep.final_rog) out.self_rog = *rep.final_rog;
    out.error = rep.data_error;
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

void data_round_trip() {
  const Scenario sc = load("sample_run.json");
  if (sample_runs.empty() || !sample_runs.front().result.solution) {
    report(false, "data round trip", "no seed-1 sample-run solution to export");
    return;
  }
  const RoundTrip r = round_trip(sc, *sample_runs.front().result.solution);
  const bool ok = r.error.empty() && std::abs(r.wind_dx) < 0.2 && std::abs(r.wind_dy) < 0.2 && r.rms_away < 0.05 &&
                  std::abs(r.self_rog) < 0.1;
  std::string others;
  for (std::size_t i = 1; i < std::min<std::size_t>(5, sample_runs.size()); ++i) {
    if (!sample_runs[i].result.solution) continue;
    const RoundTrip o = round_trip(sc, *sample_runs[i].result.solution);
    others += format(" seed %llu: rog %.3f rms %.3f;", static_cast<unsigned long long>(sample_runs[i].seed),
                     o.self_rog, o.rms_away);
  }
  report(ok, "data round trip",
         format("seed 1: wind err (%.3f, %.3f) m/s, bank RMS %.4f rad away from switches (%.4f overall), self ROG %.4f%s",
                r.wind_dx, r.wind_dy, r.rms_away, r.rms_all, r.self_rog, r.error.empty() ? "" : (" " + r.error).c_str()) +
             " | other seeds:" + others);
}

// --- human baseline ----------------------------------------------------------

void human_baseline() {
  const Scenario sc = load("human_baseline.json");
  const HumanFlight human = simulate_human_strategy(sc);
  const GeoPoint ref{33.63, -117.25, 400.0};
  const auto ned = trajectory_to_ned(human.samples, sc.params, sc.wind, 0.2);
  const FlightTrack track = parse_flysight_csv(write_flysight_csv(to_flight_samples(ned, ref, 1.7e9)));
  int above = 0;
  std::string rogs;
  for (std::uint64_t trial = 1; trial <= 10; ++trial) {
    CompareOptions o;
    o.landing_ref = ref;
    o.params = sc.params;
    o.runs = 1;
    o.planner = budgeted(10);
    o.planner.seed = trial;
    o.execution = Execution::serial;
    const ComparisonReport rep = compare_flight(track, o);
    if (rep.final_rog) {
      above += *rep.final_rog > 0.1;
      rogs += format(" %.3f", *rep.final_rog);
    } else {
      rogs += rep.data_error.empty() ? " -" : (" [" + rep.data_error + "]");
    }
  }
  report(above >= 8, "human-baseline comparison",
         format("scripted pilot %s, cost %.3f; final ROG > 0.1 in %d/10 trials:%s",
                human.landed_in_goal ? "lands in goal" : "misses goal", human.total_cost, above, rogs.c_str()));
}

}  // namespace

int main() {
  std::printf("planner budgets: %.0f iterations per nominal second, nominal seconds as wall-clock cap\n", kItersPerSecond);
  dynamics_oracle();
  rog_identities();
  sample_run_feasibility();
  data_round_trip();
  planner_self_consistency();
  anytime_behaviour();
  wind_trend();
  human_baseline();
  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
