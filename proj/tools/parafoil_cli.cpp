// parafoil: plan landing trajectories, run batch studies, compare against
// FlySight logs and export synthetic logs.
//
// Exit codes: 0 success, 1 input error, 2 no solution, 3 data-quality failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "parafoil/batch.hpp"
#include "parafoil/compare.hpp"
#include "parafoil/flightdata.hpp"
#include "parafoil/human_pilot.hpp"
#include "parafoil/planner.hpp"
#include "parafoil/scenario_io.hpp"
#include "parafoil/svg.hpp"
#include "parafoil/trajectory_io.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace parafoil;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNoSolution = 2;
constexpr int kExitDataQuality = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataQualityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 1;
  double budget = 40.0;
  std::uint64_t iterations = 0;
  std::string out_dir = ".";
  double delta_bn = 120.0;
  double delta_s = 60.0;
  double goal_bias = 0.05;
  bool serial = false;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& content) {
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << content;
  return path;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Comma-separated numbers; an item "lo:hi:step" expands to an inclusive range.
std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw InputError("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw InputError("not a number: '" + s + "'");
    return v;
  };
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto c1 = item.find(':');
    if (c1 == std::string::npos) {
      out.push_back(number(item));
      continue;
    }
    const auto c2 = item.find(':', c1 + 1);
    if (c2 == std::string::npos) throw InputError("range must be lo:hi:step, got '" + item + "'");
    const double lo = number(item.substr(0, c1)), hi = number(item.substr(c1 + 1, c2 - c1 - 1)),
                 step = number(item.substr(c2 + 1));
    if (!(step > 0.0) || hi < lo) throw InputError("bad range '" + item + "'");
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long k = 0; k <= n; ++k) out.push_back(lo + static_cast<double>(k) * step);
  }
  if (out.empty()) throw InputError("empty value list");
  return out;
}

GeoPoint parse_geo(const std::string& text) {
  const auto v = parse_list(text);
  if (v.size() != 3) throw InputError("expected lat,lon,alt");
  if (std::abs(v[0]) > 90.0 || std::abs(v[1]) > 180.0) throw InputError("latitude/longitude out of range");
  return {v[0], v[1], v[2]};
}

Scenario load_scenario_checked(const std::string& path) {
  try {
    return parse_scenario(read_file(path));
  } catch (const ConfigError& e) {
    throw InputError(path + ": " + e.what());
  }
}

PlannerConfig make_config(const Globals& g) {
  PlannerConfig c;
  c.seed = g.seed;
  c.time_budget = g.budget;
  c.max_iterations = g.iterations;
  c.delta_bn = g.delta_bn;
  c.delta_s = g.delta_s;
  c.goal_bias = g.goal_bias;
  try {
    c.validate();
  } catch (const ConfigError& e) {
    throw InputError(e.what());
  }
  return c;
}

json config_json(const PlannerConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["time_budget"] = c.time_budget;
  j["max_iterations"] = c.max_iterations;
  j["delta_bn"] = c.delta_bn;
  j["delta_s"] = c.delta_s;
  j["duration_step"] = c.duration_step;
  j["max_duration_steps"] = c.max_duration_steps;
  j["goal_bias"] = c.goal_bias;
  j["integration_step"] = c.integration_step;
  if (c.approach_threshold_h) j["approach_threshold_h"] = *c.approach_threshold_h;
  return j;
}

Execution execution(const Globals& g) { return g.serial ? Execution::serial : Execution::parallel; }

// --- plots ----------------------------------------------------------------

std::vector<svg::Region> topdown_regions(const Scenario& s) {
  std::vector<svg::Region> out;
  for (const PrismObstacle& o : s.obstacles) {
    char label[160];
    std::snprintf(label, sizeof label, "%s [%g, %g] m", o.label.c_str(), o.extent.h_lo, o.extent.h_hi);
    out.push_back({label, o.extent.x_lo, o.extent.y_lo, o.extent.x_hi, o.extent.y_hi, "#e07b7b"});
  }
  const Box3& g = s.goal.box;
  out.push_back({"goal", g.x_lo, g.y_lo, g.x_hi, g.y_hi, "#7bb0e0"});
  return out;
}

svg::Series xy_series(const std::vector<TrajectorySample>& samples, const std::string& label, const std::string& color,
                      bool dashed = false) {
  svg::Series s{label, {}, color, dashed};
  for (const auto& p : samples) s.points.emplace_back(p.state.x, p.state.y);
  return s;
}

void write_plan_plots(const fs::path& dir, const Scenario& scenario, const SolutionTrajectory& sol,
                      std::vector<std::string>& artifacts) {
  svg::Plot top{"Top-down view", "x [m]", "y [m]", {xy_series(sol.samples, "planned", "#1f77b4")},
                topdown_regions(scenario), true};
  top.series.push_back({"start", {{scenario.initial.x, scenario.initial.y}}, "#2ca02c"});
  artifacts.push_back(write_file(dir, "topdown.svg", svg::render(top)).string());

  svg::Plot alt{"Altitude", "t [s]", "h [m]", {}, {}, false};
  svg::Series h{"altitude", {}, "#1f77b4"};
  for (const auto& p : sol.samples) h.points.emplace_back(p.t, p.state.h);
  alt.series.push_back(std::move(h));
  artifacts.push_back(write_file(dir, "altitude.svg", svg::render(alt)).string());

  svg::Plot bank{"Bank angle", "t [s]", "phi [rad]", {}, {}, false};
  svg::Series b{"phi", {}, "#d62728"};
  for (const auto& p : sol.samples) b.points.emplace_back(p.t, p.phi);
  bank.series.push_back(std::move(b));
  artifacts.push_back(write_file(dir, "bank.svg", svg::render(bank)).string());
}

// Oblique projection of (x, y, h): x to the right, h up, y receding at 30 degrees.
std::pair<double, double> oblique(double x, double y, double h) {
  const double c = 0.5 * std::cos(kPi / 6.0), s = 0.5 * std::sin(kPi / 6.0);
  return {x + c * y, h + s * y};
}

// --- subcommands ------------------------------------------------------------

int cmd_plan(const Globals& g, const std::string& scenario_path) {
  const Scenario scenario = load_scenario_checked(scenario_path);
  const PlannerConfig config = make_config(g);
  const auto wall0 = std::chrono::steady_clock::now();
  const PlanResult result = plan(scenario, config);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";

  const fs::path dir = g.out_dir;
  std::vector<std::string> artifacts;
  json rec;
  rec["scenario"] = scenario_path;
  rec["config"] = config_json(config);
  rec["seed"] = config.seed;
  rec["outcome"] = result.solution ? "success" : "failure";
  if (result.solution) {
    const SolutionTrajectory& sol = *result.solution;
    rec["total_cost"] = sol.total_cost;
    rec["landing_time"] = sol.landing_time;
    artifacts.push_back(write_file(dir, "trajectory.csv", write_trajectory_csv(sol.samples)).string());
    artifacts.push_back(write_file(dir, "controls.csv", write_controls_csv(sol.segments)).string());
    write_plan_plots(dir, scenario, sol, artifacts);
  } else {
    rec["total_cost"] = nullptr;
  }
  rec["wall_time"] = wall;
  json stats;
  stats["iterations"] = result.stats.iterations;
  stats["live_nodes"] = result.stats.live_nodes;
  stats["active_nodes"] = result.stats.active_nodes;
  stats["witnesses"] = result.stats.witnesses;
  rec["stats"] = stats;
  json hist = json::array();
  for (const auto& h : result.history) hist.push_back({{"iteration", h.iteration}, {"elapsed", h.elapsed}, {"cost", h.cost}});
  rec["history"] = hist;
  rec["warnings"] = result.warnings;
  artifacts.push_back((dir / "run.json").string());
  rec["artifacts"] = artifacts;
  write_file(dir, "run.json", rec.dump(2) + "\n");

  if (!result.solution) {
    std::cout << "no solution within budget (" << result.stats.iterations << " iterations)\n";
    return kExitNoSolution;
  }
  std::printf("solution: cost %.6f, landing time %.2f s, %llu iterations\n", result.solution->total_cost,
              result.solution->landing_time, static_cast<unsigned long long>(result.stats.iterations));
  return kExitOk;
}

struct BatchArgs {
  std::string scenario;
  std::size_t runs = 10;
  std::string budgets = "10,30,50";
  std::string unit = "seconds";
  std::optional<std::uint64_t> seed_base;
};

int cmd_batch(const Globals& g, const BatchArgs& a) {
  const Scenario scenario = load_scenario_checked(a.scenario);
  if (a.runs < 1) throw InputError("--runs must be at least 1");
  const auto budgets = parse_list(a.budgets);
  for (double b : budgets)
    if (!(b > 0.0)) throw InputError("budgets must be positive");
  const BudgetUnit unit = a.unit == "iterations" ? BudgetUnit::iterations : BudgetUnit::seconds;
  if (a.unit != "iterations" && a.unit != "seconds") throw InputError("--unit must be seconds or iterations");

  PlannerConfig config = make_config(g);
  const double longest = *std::max_element(budgets.begin(), budgets.end());
  if (unit == BudgetUnit::seconds) {
    config.time_budget = longest;
  } else {
    config.max_iterations = static_cast<std::uint64_t>(std::llround(longest));
    config.time_budget = g.iterations ? 0.0 : g.budget;  // wall-clock cap still applies
  }
  const auto seeds = seed_range(a.seed_base.value_or(g.seed), a.runs);
  const auto runs = run_seeds(scenario, config, seeds, execution(g));
  const auto rows = summarize_checkpoints(runs, budgets, unit);

  std::string summary = "budget,runs,success_rate,min,q1,median,q3,max\n";
  for (const auto& r : rows) {
    summary += fmt(r.budget) + "," + std::to_string(r.summary.runs) + "," + fmt(r.summary.success_rate);
    if (r.summary.cost) {
      const Quantiles& q = *r.summary.cost;
      for (double v : {q.min, q.q1, q.median, q.q3, q.max}) summary += "," + fmt(v);
    } else {
      summary += ",,,,,";
    }
    summary += "\n";
  }
  std::string per_run = "budget,seed,success,cost\n";
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.outcomes.size(); ++i)
      per_run += fmt(r.budget) + "," + std::to_string(runs[i].seed) + "," + (r.outcomes[i].success ? "1," : "0,") +
                 (r.outcomes[i].success ? fmt(r.outcomes[i].cost) : "") + "\n";
  // elapsed times only make sense (and only vary) under a wall-clock budget
  const bool timed = unit == BudgetUnit::seconds;
  std::string history = timed ? "seed,iteration,elapsed,cost\n" : "seed,iteration,cost\n";
  for (const auto& r : runs)
    for (const auto& h : r.result.history)
      history += std::to_string(r.seed) + "," + std::to_string(h.iteration) + "," + (timed ? fmt(h.elapsed) + "," : "") +
                 fmt(h.cost) + "\n";

  const fs::path dir = g.out_dir;
  write_file(dir, "summary.csv", summary);
  write_file(dir, "runs.csv", per_run);
  write_file(dir, "history.csv", history);
  std::cout << summary;
  return kExitOk;
}

struct SensitivityArgs {
  std::string scenario;
  std::string vary;
  std::string values;
  std::size_t runs = 10;
};

int cmd_sensitivity(const Globals& g, const SensitivityArgs& a) {
  const Scenario base = load_scenario_checked(a.scenario);
  if (a.runs < 1) throw InputError("--runs must be at least 1");
  SensitivityParameter param{};
  try {
    param = parse_sensitivity_parameter(a.vary);
  } catch (const ConfigError& e) {
    throw InputError(e.what());
  }
  const auto values = parse_list(a.values);
  const PlannerConfig config = make_config(g);
  const auto seeds = seed_range(g.seed, a.runs);

  std::string csv = "value,success_rate,median_cost\n";
  for (double v : values) {
    Scenario s;
    try {
      s = vary_scenario(base, param, v);
    } catch (const ConfigError& e) {
      throw InputError("value " + fmt(v) + ": " + e.what());
    }
    const auto runs = run_seeds(s, config, seeds, execution(g));
    std::vector<RunOutcome> outcomes;
    for (const auto& r : runs)
      outcomes.push_back({r.result.solution.has_value(), r.result.solution ? r.result.solution->total_cost : 0.0});
    const BatchSummary sum = summarize_batch(outcomes);
    csv += fmt(v) + "," + fmt(sum.success_rate) + "," + (sum.cost ? fmt(sum.cost->median) : "") + "\n";
  }
  write_file(g.out_dir, "sensitivity.csv", csv);
  std::cout << csv;
  return kExitOk;
}

struct CompareArgs {
  std::string log;
  std::string landing_ref;
  std::size_t runs = 10;
  bool real_time = false;
  std::string against;
  double start_altitude = 1000.0;
  double speed = 15.0;
  double glide_ratio = 3.0;
};

json wind_json(const WindEstimate& w) {
  return {{"wx", w.wx}, {"wy", w.wy}, {"residual_rms", w.residual_rms}, {"airspeed_estimate", w.airspeed_estimate}};
}

int cmd_compare(const Globals& g, const CompareArgs& a) {
  FlightTrack track;
  try {
    track = parse_flysight_csv(read_file(a.log));
  } catch (const FlightDataError& e) {
    if (e.kind() == FlightDataError::Kind::format) throw InputError(a.log + ": " + e.what());
    throw DataQualityError(a.log + ": " + e.what());
  }
  CompareOptions opt;
  if (!a.landing_ref.empty()) opt.landing_ref = parse_geo(a.landing_ref);
  opt.params = {a.speed, a.glide_ratio, 9.81};
  try {
    opt.params.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  opt.planner = make_config(g);
  opt.runs = a.runs;
  opt.start_altitude = a.start_altitude;
  opt.real_time = a.real_time;
  opt.execution = execution(g);
  if (opt.runs < 1) throw InputError("--runs must be at least 1");

  ComparisonReport rep;
  if (a.against.empty()) {
    rep = compare_flight(track, opt);
  } else {
    std::vector<TrajectorySample> traj;
    try {
      traj = parse_trajectory_csv(read_file(a.against));
    } catch (const ConfigError& e) {
      throw InputError(a.against + ": " + e.what());
    }
    rep = compare_flight_to_trajectory(track, traj, opt);
  }

  const fs::path dir = g.out_dir;
  json j;
  j["log"] = a.log;
  j["samples"] = track.samples.size();
  j["dropped_low_quality"] = track.dropped_low_quality;
  j["dropped_out_of_order"] = track.dropped_out_of_order;
  j["landing_ref"] = {{"lat", rep.ned.landing_ref.lat}, {"lon", rep.ned.landing_ref.lon}, {"alt", rep.ned.landing_ref.alt}};
  j["heading_from_course"] = rep.ned.heading_from_course;
  j["start_index"] = rep.start_index;
  write_file(dir, "ned.csv", write_ned_csv(rep.ned.samples));
  if (rep.wind) j["wind"] = wind_json(*rep.wind);
  if (!rep.bank.empty()) write_file(dir, "phi.csv", write_bank_csv(rep.bank));
  if (rep.human_curve) {
    j["human_cost"] = rep.human_curve->final_cost();
    j["human_duration"] = rep.human_duration;
    write_file(dir, "human_curve.csv", write_cost_curve_csv(*rep.human_curve));
  }
  if (!rep.data_error.empty()) {
    j["error"] = rep.data_error;
    write_file(dir, "report.json", j.dump(2) + "\n");
    std::cerr << "data-quality failure: " << rep.data_error << "\n";
    return kExitDataQuality;
  }

  j["config"] = config_json(opt.planner);
  j["runs"] = a.against.empty() ? opt.runs : 0;
  j["planner_successes"] = rep.planner_successes;
  j["alignment"] = opt.real_time ? "real_time" : "normalized";
  std::vector<TrajectorySample> planned;
  if (rep.best) {
    j["best_seed"] = rep.best->seed;
    j["planner_cost"] = rep.best->result.solution->total_cost;
    planned = rep.best->result.solution->samples;
    write_file(dir, "trajectory.csv", write_trajectory_csv(planned));
  } else if (!a.against.empty()) {
    planned = parse_trajectory_csv(read_file(a.against));
    j["against"] = a.against;
    j["planner_cost"] = trajectory_cost(planned);
  }
  if (rep.planner_curve) write_file(dir, "planner_curve.csv", write_cost_curve_csv(*rep.planner_curve));
  if (!rep.rog.empty()) write_file(dir, "rog.csv", write_rog_csv(rep.rog));
  if (rep.final_rog) j["final_rog"] = *rep.final_rog;

  // Overlays: recorded track from the comparison start versus the plan.
  svg::Series human{"human", {}, "#ff7f0e"};
  svg::Series human3{"human", {}, "#ff7f0e"};
  for (std::size_t i = rep.start_index; i < rep.ned.samples.size(); ++i) {
    const NedSample& s = rep.ned.samples[i];
    human.points.emplace_back(s.x, s.y);
    human3.points.push_back(oblique(s.x, s.y, s.h));
  }
  svg::Plot top{"Top-down overlay (x north, y east)", "x [m]", "y [m]", {human}, {}, true};
  svg::Plot iso{"Oblique 3D overlay", "x + 0.43 y [m]", "h + 0.25 y [m]", {human3}, {}, true};
  if (rep.scenario) top.regions = topdown_regions(*rep.scenario);
  if (!planned.empty()) {
    top.series.push_back(xy_series(planned, "planned", "#1f77b4"));
    svg::Series p3{"planned", {}, "#1f77b4"};
    for (const auto& p : planned) p3.points.push_back(oblique(p.state.x, p.state.y, p.state.h));
    iso.series.push_back(std::move(p3));
  }
  write_file(dir, "overlay_topdown.svg", svg::render(top));
  write_file(dir, "overlay_3d.svg", svg::render(iso));
  write_file(dir, "report.json", j.dump(2) + "\n");

  if (!rep.final_rog) {
    std::cout << "no planner solution; human cost " << rep.human_curve->final_cost() << "\n";
    return kExitNoSolution;
  }
  std::printf("human cost %.6f, planner cost %.6f, final ROG %.4f\n", rep.human_curve->final_cost(),
              j["planner_cost"].get<double>(), *rep.final_rog);
  return kExitOk;
}

struct ExportArgs {
  std::string trajectory;
  std::string scenario;
  std::string human_sim;
  std::string landing_ref = "0,0,0";
  std::string start_time = "2024-01-01T00:00:00Z";
  double period = 0.2;
};

int cmd_export(const Globals& g, const ExportArgs& a) {
  const GeoPoint ref = parse_geo(a.landing_ref);
  double start = 0.0;
  try {
    start = parse_utc_timestamp(a.start_time);
  } catch (const std::exception& e) {
    throw InputError(std::string("--start-time: ") + e.what());
  }
  if (!(a.period > 0.0)) throw InputError("--period must be positive");

  Scenario scenario;
  std::vector<TrajectorySample> samples;
  const fs::path dir = g.out_dir;
  if (!a.human_sim.empty()) {
    scenario = load_scenario_checked(a.human_sim);
    const HumanFlight flight = simulate_human_strategy(scenario);
    samples = flight.samples;
    write_file(dir, "human_trajectory.csv", write_trajectory_csv(samples));
    std::printf("human strategy: %s, cost %.6f, %.1f s\n", flight.landed_in_goal ? "landed in goal" : "missed the goal",
                flight.total_cost, samples.back().t);
  } else {
    if (a.trajectory.empty() || a.scenario.empty())
      throw InputError("export needs --trajectory with --scenario, or --human-sim");
    scenario = load_scenario_checked(a.scenario);
    try {
      samples = parse_trajectory_csv(read_file(a.trajectory));
    } catch (const ConfigError& e) {
      throw InputError(a.trajectory + ": " + e.what());
    }
  }
  const auto ned = trajectory_to_ned(samples, scenario.params, scenario.wind, a.period);
  const auto flight = to_flight_samples(ned, ref, start);
  const fs::path out = write_file(dir, "flysight.csv", write_flysight_csv(flight));
  std::cout << "wrote " << out.string() << " (" << flight.size() << " fixes)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parafoil landing planner and flight-log comparison"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Planner seed (64-bit)");
  app.add_option("--budget", g.budget, "Wall-clock budget per planner run [s]; 0 disables")->check(CLI::NonNegativeNumber);
  app.add_option("--iterations", g.iterations, "Iteration budget per planner run; 0 disables");
  app.add_option("--out-dir", g.out_dir, "Output directory");
  app.add_option("--delta-bn", g.delta_bn, "Best-near selection radius [m]");
  app.add_option("--delta-s", g.delta_s, "Witness radius [m]");
  app.add_option("--goal-bias", g.goal_bias, "Probability of sampling inside the goal");
  app.add_flag("--serial", g.serial, "Run batch planners on one thread");

  std::string plan_scenario;
  auto* plan_cmd = app.add_subcommand("plan", "Plan one trajectory");
  plan_cmd->add_option("scenario", plan_scenario, "Scenario JSON")->required();

  BatchArgs batch;
  auto* batch_cmd = app.add_subcommand("batch", "Anytime study: best cost at budget checkpoints over seeds");
  batch_cmd->add_option("scenario", batch.scenario, "Scenario JSON")->required();
  batch_cmd->add_option("--runs", batch.runs, "Number of seeds");
  batch_cmd->add_option("--budgets", batch.budgets, "Checkpoints, e.g. 10,30,50 or 10:100:10");
  batch_cmd->add_option("--unit", batch.unit, "Checkpoint unit: seconds or iterations");
  batch_cmd->add_option("--seed-base", batch.seed_base, "First seed (defaults to --seed)");

  SensitivityArgs sens;
  auto* sens_cmd = app.add_subcommand("sensitivity", "Success rate while varying one scenario parameter");
  sens_cmd->add_option("scenario", sens.scenario, "Base scenario JSON")->required();
  sens_cmd->add_option("--vary", sens.vary, "wind_mag | wind_dir | init_pos | init_heading")->required();
  sens_cmd->add_option("--values", sens.values, "Values, e.g. 2,4,6 or 2:12:2")->required();
  sens_cmd->add_option("--runs", sens.runs, "Seeds per value");

  CompareArgs cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Compare a FlySight log against the planner");
  cmp_cmd->add_option("log", cmp.log, "FlySight CSV")->required();
  cmp_cmd->add_option("--landing-ref", cmp.landing_ref, "lat,lon,alt of the origin (default: last fix)");
  cmp_cmd->add_option("--runs", cmp.runs, "Planner runs; the cheapest is kept");
  cmp_cmd->add_flag("--real-time", cmp.real_time, "Align curves by elapsed time instead of normalized time");
  cmp_cmd->add_option("--against", cmp.against, "Compare with this trajectory CSV instead of planning");
  cmp_cmd->add_option("--start-altitude", cmp.start_altitude, "Comparison starts at the first fix at or below [m]");
  cmp_cmd->add_option("--speed", cmp.speed, "Airspeed V [m/s]");
  cmp_cmd->add_option("--glide-ratio", cmp.glide_ratio, "Glide ratio L/D");

  ExportArgs ex;
  auto* ex_cmd = app.add_subcommand("export", "Write a FlySight-format log for a trajectory or the scripted pilot");
  ex_cmd->add_option("--trajectory", ex.trajectory, "Trajectory CSV (t,x,y,h,psi,phi)");
  ex_cmd->add_option("--scenario", ex.scenario, "Scenario the trajectory was flown in (params and wind)");
  ex_cmd->add_option("--human-sim", ex.human_sim, "Simulate the scripted pilot in this scenario instead");
  ex_cmd->add_option("--landing-ref", ex.landing_ref, "lat,lon,alt of the origin");
  ex_cmd->add_option("--start-time", ex.start_time, "UTC time of the first fix");
  ex_cmd->add_option("--period", ex.period, "Fix interval [s]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*plan_cmd) return cmd_plan(g, plan_scenario);
    if (*batch_cmd) return cmd_batch(g, batch);
    if (*sens_cmd) return cmd_sensitivity(g, sens);
    if (*cmp_cmd) return cmd_compare(g, cmp);
    if (*ex_cmd) return cmd_export(g, ex);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DataQualityError& e) {
    std::cerr << "data-quality failure: " << e.what() << "\n";
    return kExitDataQuality;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
