#include "adhoc/policy.hpp"

#include <cmath>
#include <string>

#include "adhoc/errors.hpp"

namespace adhoc {

StochasticPolicy::StochasticPolicy(AgentKind agent, int goal, const std::vector<Row>& rows)
    : agent_(agent), goal_(goal) {
  if (rows.empty()) throw InputError("policy needs at least one state");
  offsets_.reserve(rows.size() + 1);
  offsets_.push_back(0);
  for (std::size_t s = 0; s < rows.size(); ++s) {
    double total = 0.0;
    for (const auto& e : rows[s]) {
      if (!(e.prob >= 0.0)) throw InputError("negative probability in state " + std::to_string(s));
      if (e.next >= rows.size()) throw InputError("successor out of range in state " + std::to_string(s));
      total += e.prob;
      if (e.prob > 0.0) entries_.push_back(e);
    }
    if (std::abs(total - 1.0) > 1e-9)
      throw InputError("action distribution does not sum to 1 in state " + std::to_string(s));
    offsets_.push_back(static_cast<std::uint32_t>(entries_.size()));
  }
}

double StochasticPolicy::prob(std::size_t state, const OnticAction& action) const {
  const ActionProb* e = find(state, action);
  return e ? e->prob : 0.0;
}

const ActionProb* StochasticPolicy::find(std::size_t state, const OnticAction& action) const {
  for (const auto& e : row(state))
    if (e.action == action) return &e;
  return nullptr;
}

namespace {

// Moves toward `target` from `pos`, each weighted by the minimal-plan count of
// its successor. Weights sum to count(pos -> target).
template <typename NextIndex>
StochasticPolicy::Row plan_weighted_moves(const DomainInstance& instance, Coord pos, Coord target,
                                          NextIndex next_index) {
  StochasticPolicy::Row row;
  const int d = shortest_distance(instance, pos, target);
  const double total = static_cast<double>(count_optimal_plans(instance, pos, target));
  for (const auto& move : kMoves) {
    const Coord n = apply_move(pos, move.kind);
    if (!instance.in_bounds(n) || shortest_distance(instance, n, target) != d - 1) continue;
    const double w = static_cast<double>(count_optimal_plans(instance, n, target));
    row.push_back({move, w / total, next_index(n)});
  }
  return row;
}

}  // namespace

StochasticPolicy worker_urop(const DomainInstance& instance, int goal) {
  if (!instance.valid_station(goal)) throw InputError("worker_urop: invalid goal " + std::to_string(goal));
  const Coord target = instance.station(goal);
  std::vector<StochasticPolicy::Row> rows(instance.worker_state_count());
  auto index = [&](Coord c) { return static_cast<std::uint32_t>(instance.worker_state(c)); };
  for (int s = 0; s < instance.worker_state_count(); ++s) {
    const Coord pos = instance.cell_at(s);
    if (pos == target)
      rows[s] = {{OnticAction::noop(), 1.0, static_cast<std::uint32_t>(s)}};
    else
      rows[s] = plan_weighted_moves(instance, pos, target, index);
  }
  return StochasticPolicy(AgentKind::Worker, goal, rows);
}

StochasticPolicy fetcher_urop(const DomainInstance& instance, int goal) {
  if (!instance.valid_station(goal)) throw InputError("fetcher_urop: invalid goal " + std::to_string(goal));
  const Coord station = instance.station(goal);
  const Coord box = instance.toolbox_for(goal);
  std::vector<StochasticPolicy::Row> rows(instance.fetcher_state_count());
  for (int s = 0; s < instance.fetcher_state_count(); ++s) {
    const FetcherState f = instance.fetcher_state_at(s);
    const auto self = static_cast<std::uint32_t>(s);
    auto keep_held = [&](Coord c) {
      return static_cast<std::uint32_t>(instance.fetcher_state({c, f.held}));
    };
    if (!f.held) {
      if (f.pos == box) {
        const FetcherState carrying{f.pos, goal};
        rows[s] = {{OnticAction::pickup(goal), 1.0,
                    static_cast<std::uint32_t>(instance.fetcher_state(carrying))}};
      } else {
        // The second leg's plan count is a common factor of every first move.
        rows[s] = plan_weighted_moves(instance, f.pos, box, keep_held);
      }
    } else if (*f.held == goal && f.pos != station) {
      rows[s] = plan_weighted_moves(instance, f.pos, station, keep_held);
    } else {
      rows[s] = {{OnticAction::noop(), 1.0, self}};
    }
  }
  return StochasticPolicy(AgentKind::Fetcher, goal, rows);
}

PolicySet PolicySet::build(const DomainInstance& instance) {
  PolicySet set;
  set.worker.reserve(instance.num_stations());
  set.fetcher.reserve(instance.num_stations());
  for (int g = 0; g < instance.num_stations(); ++g) {
    set.worker.push_back(worker_urop(instance, g));
    set.fetcher.push_back(fetcher_urop(instance, g));
  }
  return set;
}

}  // namespace adhoc
