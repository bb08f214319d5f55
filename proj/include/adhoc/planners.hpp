#ifndef ADHOC_PLANNERS_HPP
#define ADHOC_PLANNERS_HPP

#include <optional>
#include <string>
#include <variant>

#include "adhoc/belief.hpp"
#include "adhoc/optim.hpp"
#include "adhoc/query.hpp"
#include "adhoc/rng.hpp"
#include "adhoc/zones.hpp"

namespace adhoc {

/// Either an ontic action or a query to the worker.
using Decision = std::variant<OnticAction, Query>;

std::string to_string(const Decision& d);
inline bool is_query(const Decision& d) { return std::holds_alternative<Query>(d); }

enum class PlannerKind { EZQ, NeverQuery, BaselineRandom, BlCostProb, BlToolbox };

std::string to_string(PlannerKind kind);
PlannerKind parse_planner_kind(const std::string& s);

/// Everything a planner may look at when choosing the fetcher's next move.
/// Zones are relative to the current joint state, so the decision being made
/// is always relative timestep 1.
struct DecisionContext {
  const DomainInstance& instance;
  const PolicySet& policies;
  const ZoneTables& zones;
  Coord worker;
  FetcherState fetcher;
  const Belief& belief;
  int timestep = 0;  // absolute, used for logging and seeding

  /// Zone snapshot over the belief support. Requires an empty-handed fetcher.
  ZoneSnapshot snapshot() const;
};

inline constexpr int kCurrentStep = 1;

/// First action, in the order N, S, E, W, Pickup, Noop, that every supported
/// goal's fetcher URO policy takes with positive probability.
std::optional<OnticAction> known_ontic_action(const DomainInstance& instance,
                                              const PolicySet& policies,
                                              const FetcherState& fetcher, const Belief& belief);

/// Ontic fallback shared by every planner: the known action, else Noop.
OnticAction default_ontic(const DecisionContext& ctx);

Decision never_query_decide(const DecisionContext& ctx);

/// Query policy: outside every Z_Q act; inside, search queries with the GA
/// (fitness value - cost) and ask the best one iff its net value is positive.
Decision ezq_decide(const DecisionContext& ctx, const CostModel& cost, const GaConfig& ga);

/// Inside any Z_Q ask a uniformly random nonempty proper subset of the support.
Decision baseline_random_decide(const DecisionContext& ctx, Rng& rng);

/// Inside any Z_Q maximize the pair-splitting objective over pairs in Z_B,
/// weighted by belief and penalized by the per-station cost.
Decision bl_cost_prob_decide(const DecisionContext& ctx, const CostModel& cost);

/// Inside any Z_Q group supported goals by the fetcher actions optimal for
/// them and ask about the median-sized group (smaller wins ties).
Decision bl_toolbox_decide(const DecisionContext& ctx);

/// Stateful wrapper that owns the per-episode randomness of a planner.
class Planner {
 public:
  Planner(PlannerKind kind, CostModel cost, GaConfig ga, std::uint64_t seed);

  PlannerKind kind() const { return kind_; }
  Decision decide(const DecisionContext& ctx);

 private:
  PlannerKind kind_;
  CostModel cost_;
  GaConfig ga_;
  std::uint64_t seed_;
  Rng rng_;
};

}  // namespace adhoc

#endif  // ADHOC_PLANNERS_HPP
