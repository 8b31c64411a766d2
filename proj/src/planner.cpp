#include "parafoil/planner.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace parafoil {

void PlannerConfig::validate() const {
  if (!(delta_s > 0.0 && delta_bn > delta_s)) throw ConfigError("planner: require delta_bn > delta_s > 0");
  if (!(duration_step > 0.0)) throw ConfigError("planner: duration_step must be positive");
  if (max_duration_steps < 1) throw ConfigError("planner: max_duration_steps must be at least 1");
  if (!(time_budget >= 0.0)) throw ConfigError("planner: time budget must be non-negative");
  if (time_budget == 0.0 && max_iterations == 0) throw ConfigError("planner: no budget (time or iterations) given");
  if (!(goal_bias >= 0.0 && goal_bias <= 1.0)) throw ConfigError("planner: goal_bias must lie in [0, 1]");
  if (!(integration_step > 0.0)) throw ConfigError("planner: integration_step must be positive");
  if (approach_threshold_h && !(*approach_threshold_h >= 0.0))
    throw ConfigError("planner: approach threshold must be non-negative");
}

// ---------------------------------------------------------------------------
// SearchTree

SearchTree::SearchTree(double index_cell) : active_(index_cell) {}

NodeId SearchTree::add_root(const ParafoilState& s) {
  if (!nodes_.empty()) throw std::logic_error("tree already has a root");
  nodes_.push_back(TreeNode{s, 0.0, 0.0, kNoNode, {}, true, false, 0});
  active_.insert(0, position(s));
  live_ = 1;
  return 0;
}

NodeId SearchTree::add_node(NodeId parent, const ParafoilState& s, double time, double cost,
                            const ControlSegment& control) {
  TreeNode& p = nodes_.at(parent);
  if (p.removed) throw std::logic_error("cannot extend a removed node");
  ++p.children;
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(TreeNode{s, time, cost, parent, control, true, false, 0});
  active_.insert(id, position(s));
  ++live_;
  return id;
}

void SearchTree::deactivate(NodeId id) {
  TreeNode& n = nodes_.at(id);
  if (!n.active) return;
  n.active = false;
  active_.erase(id);
}

void SearchTree::prune_inactive_leaves(NodeId id) {
  while (id != kNoNode) {
    TreeNode& n = nodes_.at(id);
    if (n.active || n.removed || n.children > 0 || n.parent == kNoNode) return;
    n.removed = true;
    --live_;
    const NodeId parent = n.parent;
    --nodes_[parent].children;
    id = parent;
  }
}

NodeId SearchTree::select(const Vec3& target, double delta_bn) const {
  if (active_.size() == 0) throw std::logic_error("select on a tree without active nodes");
  NodeId best = kNoNode;
  double best_cost = std::numeric_limits<double>::infinity();
  active_.for_each_within(target, delta_bn, [&](PointId id, double) {
    const double c = nodes_[id].cost;
    if (c < best_cost || (c == best_cost && id < best)) {
      best = id;
      best_cost = c;
    }
  });
  if (best != kNoNode) return best;
  return *active_.nearest(target);
}

std::vector<ControlSegment> SearchTree::segments_to(NodeId id) const {
  std::vector<ControlSegment> out;
  for (NodeId cur = id; nodes_.at(cur).parent != kNoNode; cur = nodes_[cur].parent) out.push_back(nodes_[cur].control);
  return {out.rbegin(), out.rend()};
}

// ---------------------------------------------------------------------------
// Witnesses

WitnessSet::WitnessSet(double delta_s) : delta_s_(delta_s), index_(delta_s) {}

std::optional<std::size_t> WitnessSet::find(const Vec3& p) const {
  std::optional<std::size_t> best;
  double best_d2 = std::numeric_limits<double>::infinity();
  index_.for_each_within(p, delta_s_, [&](PointId id, double d2) {
    if (d2 < best_d2 || (d2 == best_d2 && id < *best)) {
      best = id;
      best_d2 = d2;
    }
  });
  return best;
}

std::size_t WitnessSet::add(const Vec3& p, NodeId representative) {
  const std::size_t id = witnesses_.size();
  witnesses_.push_back({p, representative});
  index_.insert(static_cast<PointId>(id), p);
  return id;
}

std::optional<NodeId> witness_insert(SearchTree& tree, WitnessSet& witnesses, const Candidate& candidate) {
  const Vec3 p = position(candidate.state);
  const auto found = witnesses.find(p);
  if (!found) {
    const NodeId id = tree.add_node(candidate.parent, candidate.state, candidate.time, candidate.cost, candidate.control);
    witnesses.add(p, id);
    return id;
  }
  Witness& w = witnesses.at(*found);
  if (w.representative != kNoNode && !(candidate.cost < tree.node(w.representative).cost)) return std::nullopt;

  const NodeId id = tree.add_node(candidate.parent, candidate.state, candidate.time, candidate.cost, candidate.control);
  const NodeId previous = w.representative;
  w.representative = id;
  if (previous != kNoNode) {
    tree.deactivate(previous);
    tree.prune_inactive_leaves(previous);
  }
  return id;
}

// ---------------------------------------------------------------------------
// Controls and trajectories

double approach_threshold(const Scenario& scenario, const PlannerConfig& config) {
  return config.approach_threshold_h.value_or(scenario.approach_threshold_h);
}

ControlSegment sample_control(Rng& rng, const ParafoilState& selected, const PlannerConfig& config,
                              const Scenario& scenario) {
  const double bound = scenario.control_bound;
  ControlSegment seg;
  seg.phi = rng.uniform(-bound, bound);
  seg.duration = static_cast<double>(rng.uniform_int(1, config.max_duration_steps)) * config.duration_step;
  if (selected.h <= approach_threshold(scenario, config) && scenario.wind.horizontal_magnitude() > 0.0) {
    seg.is_approach_law = true;
    seg.phi = 0.0;
  }
  return seg;
}

SolutionTrajectory build_trajectory(const Scenario& scenario, std::span<const ControlSegment> segments,
                                    double threshold_h, double step) {
  const auto law = approach_law_for(scenario, threshold_h);
  SolutionTrajectory out;
  out.segments.assign(segments.begin(), segments.end());
  out.samples.push_back({0.0, scenario.initial, 0.0});
  double t0 = 0.0;
  for (const ControlSegment& seg : segments) {
    const ParafoilState start = out.samples.back().state;
    propagate_visit(start, seg, scenario.params, scenario.wind, step, law,
                    [&](double t, const ParafoilState& s, double phi, double) {
                      out.samples.back().phi = phi;
                      out.samples.push_back({t0 + t, s, phi});
                      return true;
                    });
    t0 += seg.duration;
  }
  out.landing_time = out.samples.back().t;
  out.total_cost = trajectory_cost(out.samples);  // same arithmetic as the exported CSV
  return out;
}

double trajectory_cost(std::span<const TrajectorySample> samples) {
  double cost = 0.0;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i)
    cost += samples[i].phi * samples[i].phi * (samples[i + 1].t - samples[i].t);
  return cost;
}

// ---------------------------------------------------------------------------
// SstPlanner

SstPlanner::SstPlanner(Scenario scenario, PlannerConfig config)
    : scenario_(std::move(scenario)),
      config_(config),
      threshold_h_(approach_threshold(scenario_, config_)),
      law_(approach_law_for(scenario_, threshold_h_)),
      rng_(config.seed),
      tree_(config.delta_bn),
      witnesses_(config.delta_s) {
  scenario_.validate();
  config_.validate();
}

Vec3 SstPlanner::sample_target() {
  const bool toward_goal = rng_.uniform01() < config_.goal_bias;
  const Box3 box = toward_goal ? scenario_.goal.box : scenario_.bounds.box();
  const double x = rng_.uniform(box.x_lo, box.x_hi);
  const double y = rng_.uniform(box.y_lo, box.y_hi);
  const double h = rng_.uniform(box.h_lo, box.h_hi);
  return {x, y, h};
}

PlanResult SstPlanner::solve() {
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - started).count(); };

  PlanResult result;
  if (scenario_.wind.horizontal_magnitude() >= scenario_.params.speed) {
    std::ostringstream msg;
    msg << "horizontal wind " << scenario_.wind.horizontal_magnitude() << " m/s is not below the airspeed "
        << scenario_.params.speed << " m/s; the goal may be unreachable";
    result.warnings.push_back(msg.str());
  }

  if (in_goal(scenario_.initial, scenario_.goal)) {
    result.solution = build_trajectory(scenario_, {}, threshold_h_, config_.integration_step);
    result.history.push_back({0, elapsed(), 0.0});
    result.stats.elapsed = elapsed();
    return result;
  }

  if (tree_.empty()) {
    const NodeId root = tree_.add_root(scenario_.initial);
    witnesses_.add(position(scenario_.initial), root);
  }

  std::optional<std::vector<ControlSegment>> best_segments;
  double best_cost = std::numeric_limits<double>::infinity();
  const auto& obstacles = scenario_.obstacles;
  const double pad = scenario_.safety_radius;

  std::uint64_t iteration = 0;
  while (true) {
    if (config_.max_iterations != 0 && iteration >= config_.max_iterations) break;
    if (config_.time_budget > 0.0 && elapsed() >= config_.time_budget) break;
    ++iteration;

    const Vec3 target = sample_target();
    const NodeId selected = tree_.select(target, config_.delta_bn);
    const TreeNode& from = tree_.node(selected);
    const ControlSegment seg = sample_control(rng_, from.state, config_, scenario_);

    double cost = from.cost;
    bool collided = false;
    bool reached = false;
    double reached_at = 0.0;
    ParafoilState end = from.state;
    const Termination term = propagate_visit(
        from.state, seg, scenario_.params, scenario_.wind, config_.integration_step, law_,
        [&](double t, const ParafoilState& s, double phi, double dt) {
          cost = node_cost(cost, phi, dt);
          end = s;
          if (point_in_collision(position(s), obstacles, scenario_.bounds, pad)) {
            collided = true;
            return false;
          }
          if (in_goal(s, scenario_.goal)) {
            reached = true;
            reached_at = t;
            return false;
          }
          return true;
        });

    if (reached) {
      if (cost < best_cost) {
        best_cost = cost;
        auto segments = tree_.segments_to(selected);
        segments.push_back({seg.phi, reached_at, seg.is_approach_law});
        best_segments = std::move(segments);
        result.history.push_back({iteration, elapsed(), cost});
      }
      continue;
    }
    if (collided || term == Termination::ground) continue;

    witness_insert(tree_, witnesses_, Candidate{selected, end, from.time + seg.duration, cost, seg});
  }

  if (best_segments) {
    result.solution = build_trajectory(scenario_, *best_segments, threshold_h_, config_.integration_step);
  }
  result.stats = {iteration, tree_.live_count(), tree_.active_count(), witnesses_.size(), elapsed()};
  return result;
}

PlanResult plan(const Scenario& scenario, const PlannerConfig& config) {
  SstPlanner planner(scenario, config);
  return planner.solve();
}

}  // namespace parafoil
