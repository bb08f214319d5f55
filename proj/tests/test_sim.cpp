#include "doctest.h"

#include <chrono>

#include "adhoc/errors.hpp"
#include "adhoc/sim.hpp"
#include "fixtures.hpp"

using namespace adhoc;

namespace {

// Shortest joint plan length by BFS over fetcher states, the worker walking
// its own shortest path in parallel.
int joint_plan_oracle(const DomainInstance& inst, int goal) {
  const int worker = fixtures::bfs_distance(inst.width(), inst.height(), inst.worker_start(), inst.station(goal));
  std::map<std::pair<int, bool>, int> dist;
  std::deque<std::pair<int, bool>> queue{{inst.cell_index(inst.fetcher_start()), false}};
  dist[queue.front()] = 0;
  while (!queue.empty()) {
    const auto [cell, held] = queue.front();
    queue.pop_front();
    const int d = dist[{cell, held}];
    if (held && inst.cell_at(cell) == inst.station(goal)) return std::max(worker, d);
    std::vector<std::pair<int, bool>> next;
    for (const auto& m : kMoves) {
      const Coord n = apply_move(inst.cell_at(cell), m.kind);
      if (inst.in_bounds(n)) next.push_back({inst.cell_index(n), held});
    }
    if (!held && inst.cell_at(cell) == inst.toolbox_for(goal)) next.push_back({cell, true});
    for (auto s : next)
      if (!dist.count(s)) {
        dist[s] = d + 1;
        queue.push_back(s);
      }
  }
  return -1;
}

Scenario three_goals(Coord fetcher = {5, 7}) {
  return Scenario::build(DomainInstance(10, 8, {{8, 4}, {8, 2}, {8, 6}}, {{5, 7}}, {0, 0, 0}, {4, 3}, fetcher));
}

EpisodeConfig config(PlannerKind planner, double base, double per_station, std::uint64_t seed) {
  EpisodeConfig c;
  c.planner = planner;
  c.cost = CostModel{base, per_station};
  c.prior = GoalPrior{PriorKind::Uniform, 1.0};
  c.seed = seed;
  return c;
}

constexpr PlannerKind kAll[] = {PlannerKind::EZQ, PlannerKind::NeverQuery, PlannerKind::BaselineRandom,
                                PlannerKind::BlCostProb, PlannerKind::BlToolbox};

}  // namespace

TEST_CASE("optimal cost") {
  // Fetcher on a toolbox next to the goal, worker far away.
  const DomainInstance far(10, 3, {{1, 0}, {9, 2}}, {{0, 0}}, {0, 0}, {9, 0}, {0, 0});
  CHECK(optimal_cost(far, 0) == 8);
  // Worker already at its goal.
  const DomainInstance at(10, 3, {{1, 0}, {9, 2}}, {{5, 2}}, {0, 0}, {1, 0}, {9, 0});
  CHECK(optimal_cost(at, 0) == 6 + 1 + 6);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto inst = fixtures::random_instance(7, 6, 4, 2, seed);
    for (int g = 0; g < 4; ++g) CHECK(optimal_cost(inst, g) == joint_plan_oracle(inst, g));
  }
}

TEST_CASE("no ambiguity means no marginal cost") {
  const Scenario sc = three_goals();
  auto c = config(PlannerKind::EZQ, 0.5, 0.0, 3);
  c.initial_belief = Belief::point_mass(3, 2);
  const auto r = run_episode(sc, 2, c);
  CHECK(r.marginal_cost == 0.0);
  CHECK(r.queries.empty());
}

TEST_CASE("never query with an early disambiguating move") {
  // Goals straight north and south of the worker; the fetcher is far from
  // the toolbox, so the first worker move settles the goal in time.
  const Scenario sc = Scenario::build(DomainInstance(10, 10, {{2, 5}, {2, 0}}, {{9, 0}}, {0, 0}, {2, 2}, {9, 9}));
  for (int goal : {0, 1})
    for (std::uint64_t seed = 0; seed < 5; ++seed)
      CHECK(run_episode(sc, goal, config(PlannerKind::NeverQuery, 0.5, 0.0, seed)).marginal_cost == 0.0);
}

TEST_CASE("episode invariants") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto inst = fixtures::random_instance(7, 7, 5, 2, seed);
    const Scenario sc = Scenario::build(inst);
    for (int goal = 0; goal < 5; ++goal)
      for (auto planner : kAll) {
        const auto r = run_episode(sc, goal, config(planner, 0.5, 0.1, seed * 10 + goal));
        CHECK(r.total_cost >= r.optimal_cost);
        CHECK(r.marginal_cost == doctest::Approx(r.total_cost - r.optimal_cost));
        CHECK(r.final_belief.in_support(goal));
        for (const auto& q : r.queries) CHECK(q.response == q.query.contains(goal));
        if (planner == PlannerKind::NeverQuery) CHECK(r.queries.empty());
        double sum = 0;
        for (const auto& e : r.trace) sum += e.cost;
        CHECK(sum == doctest::Approx(r.total_cost));
      }
  }
}

TEST_CASE("prohibitive query costs reduce cost-aware planners to never query") {
  const double inf = std::numeric_limits<double>::infinity();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Scenario sc = Scenario::build(fixtures::random_instance(8, 8, 5, 2, seed));
    for (int goal = 0; goal < 5; ++goal) {
      const double never = run_episode(sc, goal, config(PlannerKind::NeverQuery, inf, inf, seed)).total_cost;
      for (auto planner : {PlannerKind::EZQ, PlannerKind::BlCostProb})
        CHECK(run_episode(sc, goal, config(planner, inf, inf, seed)).total_cost == never);
    }
  }
}

TEST_CASE("query timestep charging") {
  const Scenario sc = three_goals();
  auto replace = config(PlannerKind::BlToolbox, 0.5, 0.1, 1);
  auto additive = replace;
  additive.mode = QueryCostMode::Additive;
  const auto a = run_episode(sc, 1, replace), b = run_episode(sc, 1, additive);
  REQUIRE_FALSE(a.queries.empty());
  CHECK(a.queries.size() == b.queries.size());
  CHECK(b.total_cost == doctest::Approx(a.total_cost + static_cast<double>(a.queries.size())));
  CHECK(a.queries[0].cost == doctest::Approx(0.5 + 0.1 * a.queries[0].query.size()));
  CHECK(parse_query_cost_mode(to_string(QueryCostMode::Additive)) == QueryCostMode::Additive);
}

TEST_CASE("step cap") {
  const Scenario sc = three_goals();
  auto c = config(PlannerKind::NeverQuery, 0.5, 0.0, 2);
  c.step_cap = static_cast<int>(optimal_cost(sc.instance, 0)) + 1;
  CHECK_THROWS_AS(run_episode(sc, 0, c), LivelockError);
  c.step_cap = 1;
  CHECK_THROWS_AS(run_episode(sc, 0, c), InputError);
}

TEST_CASE("episodes replay bit for bit") {
  const Scenario sc = Scenario::build(fixtures::random_instance(9, 9, 6, 2, 77));
  for (auto planner : kAll) {
    const auto a = run_episode(sc, 3, config(planner, 0.5, 0.2, 5));
    const auto b = run_episode(sc, 3, config(planner, 0.5, 0.2, 5));
    CHECK(encode_trace(a.trace) == encode_trace(b.trace));
    CHECK(a.total_cost == b.total_cost);
  }
}

TEST_CASE("golden eZ_Q trace") {
  // Step-by-step replay with the same seed streams as the simulator.
  const Scenario sc = three_goals();
  const auto& inst = sc.instance;
  const int goal = 1;
  const auto cfg = config(PlannerKind::EZQ, 0.5, 0.0, 11);
  const auto r = run_episode(sc, goal, cfg);

  Rng worker_rng(derive_seed(cfg.seed, {0x3011}));
  Planner planner(PlannerKind::EZQ, cfg.cost, cfg.ga, derive_seed(cfg.seed, {0x91a7}));
  Coord worker = inst.worker_start();
  FetcherState fetcher{inst.fetcher_start(), std::nullopt};
  Belief belief(std::vector<double>(3, 1.0));
  double total = 0;
  std::string trace;
  int t = 0;
  while (!(worker == inst.station(goal) && fetcher.pos == inst.station(goal) && fetcher.held == goal)) {
    ++t;
    const Decision d = planner.decide({inst, sc.policies, sc.zones, worker, fetcher, belief, t});
    OnticAction wa = OnticAction::noop();
    if (const auto* q = std::get_if<Query>(&d)) {
      belief = observe_response(belief, *q, q->contains(goal));
      total += 0.5;
    } else {
      const auto row = sc.policies.worker[goal].row(inst.worker_state(worker));
      double u = worker_rng.uniform01();
      wa = row.back().action;
      for (const auto& e : row) {
        if (u < e.prob) {
          wa = e.action;
          break;
        }
        u -= e.prob;
      }
      const auto next = step(inst, worker, fetcher, wa, std::get<OnticAction>(d));
      belief = observe_action(belief, inst, sc.policies, worker, wa);
      worker = next.worker;
      fetcher = next.fetcher;
      total += 1;
    }
    if (!trace.empty()) trace += ';';
    trace += std::to_string(t) + ':' + to_string(d) + '/' + to_string(wa);
  }
  CHECK(r.total_cost == total);
  CHECK(encode_trace(r.trace) == trace);
  CHECK_FALSE(r.queries.empty());
}

TEST_CASE("decision time excludes precompute") {
  const Scenario sc = Scenario::build(fixtures::random_instance(10, 10, 10, 2, 3));
  const auto r = run_episode(sc, 0, config(PlannerKind::EZQ, 0.5, 0.0, 1));
  CHECK(r.max_decision_seconds < 1.0);
  CHECK(r.total_decision_seconds >= r.max_decision_seconds);
}
