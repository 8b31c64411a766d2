#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parafoil/dynamics.hpp"
#include "parafoil/random.hpp"
#include "parafoil/spatial_index.hpp"
#include "parafoil/world.hpp"

namespace parafoil {

struct PlannerConfig {
  double delta_bn = 120.0;  // best-near selection radius [m]
  double delta_s = 60.0;    // witness radius [m]
  double duration_step = 1.0;
  int max_duration_steps = 10;
  /// Overrides the scenario's threshold when set.
  std::optional<double> approach_threshold_h;
  /// Wall-clock budget [s]; zero disables the limit.
  double time_budget = 40.0;
  /// Iteration budget; zero disables the limit. The run stops at whichever
  /// limit is hit first.
  std::uint64_t max_iterations = 0;
  std::uint64_t seed = 1;
  /// Probability of drawing the random target inside the goal box.
  double goal_bias = 0.05;
  double integration_step = kIntegrationStep;

  void validate() const;
};

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct TreeNode {
  ParafoilState state;
  double time = 0.0;  // since the initial state [s]
  double cost = 0.0;  // accumulated integral of phi^2 [rad^2 s]
  NodeId parent = kNoNode;
  ControlSegment control;  // edge from the parent
  bool active = true;
  bool removed = false;
  std::uint32_t children = 0;
};

/// Node arena plus an index over the active set. Nodes are never moved, so
/// ids stay valid; pruned nodes are flagged `removed`.
class SearchTree {
 public:
  explicit SearchTree(double index_cell = 120.0);

  NodeId add_root(const ParafoilState& s);
  NodeId add_node(NodeId parent, const ParafoilState& s, double time, double cost, const ControlSegment& control);

  /// Drops the node from the active set; it stays in the tree for its children.
  void deactivate(NodeId id);
  /// Removes `id` and then its ancestors while they are inactive and childless.
  void prune_inactive_leaves(NodeId id);

  /// Best-near selection: cheapest active node within `delta_bn` of `target`,
  /// otherwise the nearest active node. Ties go to the smaller id.
  NodeId select(const Vec3& target, double delta_bn) const;

  const TreeNode& node(NodeId id) const { return nodes_.at(id); }
  std::span<const TreeNode> nodes() const { return nodes_; }
  std::size_t live_count() const { return live_; }
  std::size_t active_count() const { return active_.size(); }
  bool empty() const { return nodes_.empty(); }

  /// Control segments on the root path to `id`, root first.
  std::vector<ControlSegment> segments_to(NodeId id) const;

 private:
  std::vector<TreeNode> nodes_;
  GridIndex active_;
  std::size_t live_ = 0;
};

struct Witness {
  Vec3 position;
  NodeId representative = kNoNode;
};

class WitnessSet {
 public:
  explicit WitnessSet(double delta_s);

  double radius() const { return delta_s_; }
  /// Index of the nearest witness within the radius of `p`.
  std::optional<std::size_t> find(const Vec3& p) const;
  std::size_t add(const Vec3& p, NodeId representative);
  Witness& at(std::size_t i) { return witnesses_.at(i); }
  std::span<const Witness> all() const { return witnesses_; }
  std::size_t size() const { return witnesses_.size(); }

 private:
  double delta_s_;
  std::vector<Witness> witnesses_;
  GridIndex index_;
};

/// A node proposed for insertion after a successful propagation.
struct Candidate {
  NodeId parent = kNoNode;
  ParafoilState state;
  double time = 0.0;
  double cost = 0.0;
  ControlSegment control;
};

/// SST sparsification step. Returns the new node id when the candidate is the
/// cheapest node its witness has seen (the previous representative is then
/// deactivated and leaf-pruned), or nothing when it is dominated.
std::optional<NodeId> witness_insert(SearchTree& tree, WitnessSet& witnesses, const Candidate& candidate);

/// Accumulated cost after holding `phi` for `dt` seconds.
inline double node_cost(double parent_cost, double phi, double dt) { return parent_cost + phi * phi * dt; }

/// Effective approach-law threshold altitude.
double approach_threshold(const Scenario& scenario, const PlannerConfig& config);

/// Random constant bank above the threshold; the approach law below it
/// (falling back to a constant bank when there is no horizontal wind).
ControlSegment sample_control(Rng& rng, const ParafoilState& selected, const PlannerConfig& config,
                              const Scenario& scenario);

struct TrajectorySample {
  double t = 0.0;
  ParafoilState state;
  double phi = 0.0;  // bank over the step starting here; last sample repeats the final step's bank
};

struct SolutionTrajectory {
  std::vector<TrajectorySample> samples;
  std::vector<ControlSegment> segments;
  double total_cost = 0.0;
  double landing_time = 0.0;
};

/// Re-propagates `segments` from the scenario's initial state.
SolutionTrajectory build_trajectory(const Scenario& scenario, std::span<const ControlSegment> segments,
                                    double threshold_h, double step = kIntegrationStep);

/// Sum of phi^2 * dt over the integrator steps of a sampled trajectory.
double trajectory_cost(std::span<const TrajectorySample> samples);

struct CostImprovement {
  std::uint64_t iteration = 0;
  double elapsed = 0.0;  // [s]
  double cost = 0.0;
};

struct PlannerStats {
  std::uint64_t iterations = 0;
  std::size_t live_nodes = 0;
  std::size_t active_nodes = 0;
  std::size_t witnesses = 0;
  double elapsed = 0.0;
};

struct PlanResult {
  std::optional<SolutionTrajectory> solution;
  std::vector<CostImprovement> history;  // strictly decreasing costs
  PlannerStats stats;
  std::vector<std::string> warnings;
};

/// One anytime SST run. Owns its tree; not shareable between threads while
/// solving, but independent instances may run concurrently.
class SstPlanner {
 public:
  SstPlanner(Scenario scenario, PlannerConfig config);

  PlanResult solve();

  const SearchTree& tree() const { return tree_; }
  const WitnessSet& witnesses() const { return witnesses_; }
  const Scenario& scenario() const { return scenario_; }
  double threshold_h() const { return threshold_h_; }

 private:
  Vec3 sample_target();

  Scenario scenario_;
  PlannerConfig config_;
  double threshold_h_;
  std::optional<ApproachLaw> law_;
  Rng rng_;
  SearchTree tree_;
  WitnessSet witnesses_;
};

/// Throws ConfigError for an invalid scenario or configuration.
PlanResult plan(const Scenario& scenario, const PlannerConfig& config);

}  // namespace parafoil
