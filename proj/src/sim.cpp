#include "adhoc/sim.hpp"

#include <algorithm>
#include <chrono>

#include "adhoc/errors.hpp"

namespace adhoc {

std::string to_string(QueryCostMode mode) {
  return mode == QueryCostMode::Replace ? "replace" : "additive";
}

QueryCostMode parse_query_cost_mode(const std::string& s) {
  if (s == "replace") return QueryCostMode::Replace;
  if (s == "additive") return QueryCostMode::Additive;
  throw InputError("unknown query cost mode '" + s + "'");
}

Scenario::Scenario(DomainInstance inst, ZoneTables z)
    : instance(std::move(inst)), policies(PolicySet::build(instance)), zones(std::move(z)) {
  if (zones.num_goals() != instance.num_stations() || zones.num_cells() != instance.num_cells())
    throw InputError("zone tables do not match the instance");
}

Scenario Scenario::build(DomainInstance instance, double epsilon) {
  PolicySet policies = PolicySet::build(instance);
  ZoneTables zones = ZoneTables::build(instance, policies, epsilon);
  return Scenario(std::move(instance), std::move(zones));
}

double optimal_cost(const DomainInstance& instance, int goal) {
  const Coord station = instance.station(goal);
  const Coord box = instance.toolbox_for(goal);
  const int worker_leg = shortest_distance(instance, instance.worker_start(), station);
  const int fetcher_leg = shortest_distance(instance, instance.fetcher_start(), box) + 1 +
                          shortest_distance(instance, box, station);
  return std::max(worker_leg, fetcher_leg);
}

namespace {

const ActionProb& sample(std::span<const ActionProb> row, Rng& rng) {
  double u = rng.uniform01();
  for (const auto& e : row) {
    if (u < e.prob) return e;
    u -= e.prob;
  }
  return row.back();
}

bool finished(const DomainInstance& instance, int goal, Coord worker, const FetcherState& fetcher) {
  const Coord station = instance.station(goal);
  return worker == station && fetcher.pos == station && fetcher.held == goal;
}

}  // namespace

EpisodeResult run_episode(const Scenario& scenario, int true_goal, const EpisodeConfig& config) {
  const DomainInstance& instance = scenario.instance;
  if (!instance.valid_station(true_goal)) throw InputError("true goal is not a station");

  EpisodeResult result;
  result.true_goal = true_goal;
  result.optimal_cost = optimal_cost(instance, true_goal);
  const int cap = config.step_cap > 0
                      ? config.step_cap
                      : 4 * (instance.width() + instance.height()) +
                            4 * static_cast<int>(result.optimal_cost);
  if (cap <= result.optimal_cost) throw InputError("step cap must exceed the optimal cost");

  Rng worker_rng(derive_seed(config.seed, {0x3011}));
  Planner planner(config.planner, config.cost, config.ga, derive_seed(config.seed, {0x91a7}));

  Coord worker = instance.worker_start();
  FetcherState fetcher{instance.fetcher_start(), std::nullopt};
  Belief belief = config.initial_belief ? *config.initial_belief : prior(instance, config.prior);
  if (!belief.in_support(true_goal))
    throw InputError("true goal has zero prior probability");

  int t = 0;
  while (!finished(instance, true_goal, worker, fetcher)) {
    if (t >= cap)
      throw LivelockError("episode exceeded " + std::to_string(cap) + " timesteps under planner " +
                          to_string(config.planner));
    ++t;
    const DecisionContext ctx{instance, scenario.policies, scenario.zones, worker, fetcher, belief, t};
    const auto start = std::chrono::steady_clock::now();
    Decision decision = planner.decide(ctx);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.max_decision_seconds = std::max(result.max_decision_seconds, elapsed);
    result.total_decision_seconds += elapsed;

    TraceEntry entry{t, decision, OnticAction::noop(), 0.0};
    if (const auto* q = std::get_if<Query>(&decision)) {
      const bool yes = q->contains(true_goal);
      double cost = query_cost(config.cost, *q);
      if (config.mode == QueryCostMode::Additive) cost += CostModel::kOnticCost;
      belief = observe_response(belief, *q, yes);
      result.queries.push_back({t, *q, yes, cost});
      entry.cost = cost;
    } else {
      const OnticAction fetcher_action = std::get<OnticAction>(decision);
      const auto& row = scenario.policies.worker[true_goal].row(instance.worker_state(worker));
      const OnticAction worker_action = sample(row, worker_rng).action;
      const JointState next = step(instance, worker, fetcher, worker_action, fetcher_action);
      belief = observe_action(belief, instance, scenario.policies, worker, worker_action);
      worker = next.worker;
      fetcher = next.fetcher;
      entry.worker_action = worker_action;
      entry.cost = CostModel::kOnticCost;
    }
    result.total_cost += entry.cost;
    result.trace.push_back(std::move(entry));
  }

  result.timesteps = t;
  result.marginal_cost = result.total_cost - result.optimal_cost;
  result.final_belief = belief;
  return result;
}

std::string encode_trace(const std::vector<TraceEntry>& trace) {
  std::string s;
  for (const auto& e : trace) {
    if (!s.empty()) s += ';';
    s += std::to_string(e.timestep) + ':' + to_string(e.fetcher) + '/' + to_string(e.worker_action);
  }
  return s;
}

}  // namespace adhoc
