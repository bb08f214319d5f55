#include "adhoc/planners.hpp"

#include <algorithm>

#include "adhoc/errors.hpp"

namespace adhoc {

std::string to_string(const Decision& d) {
  if (const auto* a = std::get_if<OnticAction>(&d)) return to_string(*a);
  return "Q" + to_string(std::get<Query>(d));
}

std::string to_string(PlannerKind kind) {
  switch (kind) {
    case PlannerKind::EZQ: return "ezq";
    case PlannerKind::NeverQuery: return "never_query";
    case PlannerKind::BaselineRandom: return "baseline";
    case PlannerKind::BlCostProb: return "bl_cost_prob";
    case PlannerKind::BlToolbox: return "bl_toolbox";
  }
  return "?";
}

PlannerKind parse_planner_kind(const std::string& s) {
  if (s == "ezq") return PlannerKind::EZQ;
  if (s == "never_query") return PlannerKind::NeverQuery;
  if (s == "baseline") return PlannerKind::BaselineRandom;
  if (s == "bl_cost_prob") return PlannerKind::BlCostProb;
  if (s == "bl_toolbox") return PlannerKind::BlToolbox;
  throw InputError("unknown planner '" + s + "'");
}

ZoneSnapshot DecisionContext::snapshot() const {
  if (fetcher.held) throw InputError("zones are undefined once the fetcher holds a tool");
  return ZoneSnapshot(zones, belief.support(), instance.worker_state(worker),
                      instance.cell_index(fetcher.pos));
}

std::optional<OnticAction> known_ontic_action(const DomainInstance& instance,
                                              const PolicySet& policies,
                                              const FetcherState& fetcher, const Belief& belief) {
  const auto state = static_cast<std::size_t>(instance.fetcher_state(fetcher));
  const auto& support = belief.support();
  std::optional<OnticAction> best;
  for (const auto& e : policies.fetcher.at(support.front()).row(state)) {
    const bool shared = std::all_of(support.begin() + 1, support.end(), [&](int g) {
      return policies.fetcher.at(g).prob(state, e.action) > 0.0;
    });
    if (shared && (!best || action_rank(e.action) < action_rank(*best))) best = e.action;
  }
  return best;
}

OnticAction default_ontic(const DecisionContext& ctx) {
  return known_ontic_action(ctx.instance, ctx.policies, ctx.fetcher, ctx.belief)
      .value_or(OnticAction::noop());
}

Decision never_query_decide(const DecisionContext& ctx) { return default_ontic(ctx); }

namespace {

// Queries are only considered while the goal is ambiguous and the fetcher is
// still choosing which tool to fetch.
bool may_query(const DecisionContext& ctx) {
  return !ctx.belief.is_point_mass() && !ctx.fetcher.held;
}

Query query_from_flags(const std::vector<int>& support, const std::vector<bool>& flags) {
  std::vector<int> stations;
  for (std::size_t i = 0; i < support.size(); ++i)
    if (flags[i]) stations.push_back(support[i]);
  return Query(std::move(stations));
}

}  // namespace

Decision ezq_decide(const DecisionContext& ctx, const CostModel& cost, const GaConfig& ga) {
  if (!may_query(ctx)) return default_ontic(ctx);
  const ZoneSnapshot snap = ctx.snapshot();
  if (!snap.in_any_zq(kCurrentStep)) return default_ontic(ctx);

  const auto& support = snap.support();
  auto net_value = [&](const BitVector& bits) {
    return query_net_value(std::vector<bool>(bits.begin(), bits.end()), ctx.belief, snap, cost);
  };
  const GaResult best = ga_optimize(net_value, support.size(), ga);

  // Guard on the query actually chosen.
  std::vector<bool> flags(best.best.begin(), best.best.end());
  const auto asked = static_cast<std::size_t>(std::count(flags.begin(), flags.end(), true));
  if (asked == 0) return default_ontic(ctx);
  const Query q = query_from_flags(support, flags);
  if (value_of_query(flags, ctx.belief, snap) - query_cost(cost, q) > 0.0) return q;
  return default_ontic(ctx);
}

Decision baseline_random_decide(const DecisionContext& ctx, Rng& rng) {
  if (!may_query(ctx)) return default_ontic(ctx);
  const ZoneSnapshot snap = ctx.snapshot();
  if (!snap.in_any_zq(kCurrentStep)) return default_ontic(ctx);

  const auto& support = snap.support();
  std::vector<bool> flags(support.size());
  while (true) {
    std::size_t set = 0;
    for (std::size_t i = 0; i < flags.size(); ++i) {
      flags[i] = rng.below(2) == 1;
      set += flags[i];
    }
    if (set > 0 && set < flags.size()) break;
  }
  return query_from_flags(support, flags);
}

Decision bl_cost_prob_decide(const DecisionContext& ctx, const CostModel& cost) {
  if (!may_query(ctx)) return default_ontic(ctx);
  const ZoneSnapshot snap = ctx.snapshot();
  if (!snap.in_any_zq(kCurrentStep)) return default_ontic(ctx);

  const auto& support = snap.support();
  std::vector<GoalPair> pairs;
  for (std::size_t a = 0; a < support.size(); ++a)
    for (std::size_t b = a + 1; b < support.size(); ++b)
      if (snap.in_zb(a, b, kCurrentStep)) pairs.emplace_back(support[a], support[b]);
  if (pairs.empty()) return default_ontic(ctx);

  const auto probs = ctx.belief.probabilities();
  const ObjectiveSolution sol = solve_query_objective(
      pairs, std::vector<double>(probs.begin(), probs.end()), cost.per_station,
      derive_seed(0, {static_cast<std::uint64_t>(ctx.timestep)}));
  if (!(sol.objective > 0.0)) return default_ontic(ctx);

  std::vector<int> stations;
  for (std::size_t g = 0; g < sol.x.size(); ++g)
    if (sol.x[g]) stations.push_back(static_cast<int>(g));
  return Query(std::move(stations));
}

Decision bl_toolbox_decide(const DecisionContext& ctx) {
  if (!may_query(ctx)) return default_ontic(ctx);
  const ZoneSnapshot snap = ctx.snapshot();
  if (!snap.in_any_zq(kCurrentStep)) return default_ontic(ctx);

  const auto& support = snap.support();
  const auto state = static_cast<std::size_t>(ctx.instance.fetcher_state(ctx.fetcher));

  // Candidate actions in the global tie-break order.
  std::vector<OnticAction> actions;
  for (int g : support)
    for (const auto& e : ctx.policies.fetcher.at(g).row(state))
      if (std::find(actions.begin(), actions.end(), e.action) == actions.end())
        actions.push_back(e.action);
  std::stable_sort(actions.begin(), actions.end(), [](const OnticAction& a, const OnticAction& b) {
    return action_rank(a) < action_rank(b) || (action_rank(a) == action_rank(b) && a.station < b.station);
  });

  std::vector<std::vector<int>> groups;
  for (const auto& a : actions) {
    std::vector<int> group;
    for (int g : support)
      if (ctx.policies.fetcher.at(g).prob(state, a) > 0.0) group.push_back(g);
    if (group.empty() || group.size() == support.size()) continue;
    if (std::find(groups.begin(), groups.end(), group) == groups.end()) groups.push_back(group);
  }
  if (groups.empty()) return default_ontic(ctx);

  std::stable_sort(groups.begin(), groups.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return Query(groups[(groups.size() - 1) / 2]);
}

Planner::Planner(PlannerKind kind, CostModel cost, GaConfig ga, std::uint64_t seed)
    : kind_(kind), cost_(cost), ga_(ga), seed_(seed), rng_(derive_seed(seed, {0x5eed})) {
  validate(ga_);
}

Decision Planner::decide(const DecisionContext& ctx) {
  switch (kind_) {
    case PlannerKind::EZQ: {
      GaConfig ga = ga_;
      ga.seed = derive_seed(seed_, {ga_.seed, static_cast<std::uint64_t>(ctx.timestep)});
      return ezq_decide(ctx, cost_, ga);
    }
    case PlannerKind::NeverQuery: return never_query_decide(ctx);
    case PlannerKind::BaselineRandom: return baseline_random_decide(ctx, rng_);
    case PlannerKind::BlCostProb: return bl_cost_prob_decide(ctx, cost_);
    case PlannerKind::BlToolbox: return bl_toolbox_decide(ctx);
  }
  throw InputError("unknown planner kind");
}

}  // namespace adhoc
