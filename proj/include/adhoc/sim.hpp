#ifndef ADHOC_SIM_HPP
#define ADHOC_SIM_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "adhoc/planners.hpp"

namespace adhoc {

/// How a query timestep is charged: query cost instead of the ontic cost,
/// or on top of it.
enum class QueryCostMode { Replace, Additive };

std::string to_string(QueryCostMode mode);
QueryCostMode parse_query_cost_mode(const std::string& s);

/// Read-only per-instance data shared by every episode.
struct Scenario {
  DomainInstance instance;
  PolicySet policies;
  ZoneTables zones;

  Scenario(DomainInstance instance, ZoneTables zones);
  /// Builds policies and zone tables from scratch.
  static Scenario build(DomainInstance instance, double epsilon = kDefaultEdpEpsilon);
};

struct EpisodeConfig {
  PlannerKind planner = PlannerKind::EZQ;
  CostModel cost;
  QueryCostMode mode = QueryCostMode::Replace;
  GaConfig ga;
  GoalPrior prior;
  std::optional<Belief> initial_belief;  // replaces the prior when set
  std::uint64_t seed = 0;
  int step_cap = 0;  // 0 selects 4 * (width + height) + 4 * optimal cost
};

struct QueryRecord {
  int timestep = 0;
  Query query{{0}};
  bool response = false;
  double cost = 0.0;
};

/// One joint timestep. For query timesteps the worker forgoes its action and
/// `worker_action` is Noop.
struct TraceEntry {
  int timestep = 0;
  Decision fetcher{OnticAction::noop()};
  OnticAction worker_action;
  double cost = 0.0;
};

struct EpisodeResult {
  int true_goal = -1;
  double total_cost = 0.0;
  double optimal_cost = 0.0;
  double marginal_cost = 0.0;
  int timesteps = 0;
  std::vector<QueryRecord> queries;
  Belief final_belief{std::vector<double>{1.0}};
  std::vector<TraceEntry> trace;
  double max_decision_seconds = 0.0;  // online planning time only
  double total_decision_seconds = 0.0;
};

/// Episode cost when the fetcher knows the goal from the start:
/// max(worker leg, fetcher-to-toolbox + pickup + toolbox-to-station).
double optimal_cost(const DomainInstance& instance, int goal);

/// Simulates one episode of the tool-fetching task. Throws LivelockError when
/// the step cap is exceeded.
EpisodeResult run_episode(const Scenario& scenario, int true_goal, const EpisodeConfig& config);

/// Compact textual form of a trace, one token per timestep; equal traces give
/// equal strings.
std::string encode_trace(const std::vector<TraceEntry>& trace);

}  // namespace adhoc

#endif  // ADHOC_SIM_HPP
