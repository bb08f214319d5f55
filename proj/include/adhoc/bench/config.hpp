#ifndef ADHOC_BENCH_CONFIG_HPP
#define ADHOC_BENCH_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "adhoc/belief.hpp"
#include "adhoc/optim.hpp"
#include "adhoc/planners.hpp"
#include "adhoc/sim.hpp"

namespace adhoc::bench {

/// The random baseline asks a uniformly drawn nonempty proper subset of the
/// support; the only value accepted for "baseline_query_sizes".
inline constexpr const char* kBaselineQuerySizes = "uniform_nonempty_proper_subset";

struct SweepConfig {
  std::string name = "desk";
  int width = 10;
  int height = 10;
  int stations = 10;
  int toolboxes = 2;
  int instances = 50;
  int episodes_per_instance = 1;
  std::uint64_t master_seed = 1;
  std::vector<PriorKind> priors = {PriorKind::BoltzmannDistance};
  double temperature = 1.0;
  std::vector<double> per_station_costs = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  double query_base = 0.5;
  std::vector<PlannerKind> planners = {PlannerKind::EZQ, PlannerKind::NeverQuery,
                                       PlannerKind::BaselineRandom, PlannerKind::BlCostProb,
                                       PlannerKind::BlToolbox};
  QueryCostMode query_cost_mode = QueryCostMode::Replace;
  GaConfig ga;
  double epsilon = kDefaultEdpEpsilon;

  /// 10x10 grid, 10 stations, 2 toolboxes, 50 instances.
  static SweepConfig desk();
  /// 20x20 grid, 50 stations, 5 toolboxes, 100 instances.
  static SweepConfig full();

  /// Throws ConfigError when a field is out of range.
  void validate() const;
};

nlohmann::json to_json(const SweepConfig& config);
/// Missing keys keep their defaults; a "profile" key ("desk" | "full")
/// selects the base profile before the remaining keys are applied.
SweepConfig config_from_json(const nlohmann::json& j);
SweepConfig load_config(const std::string& path);

/// Applies a "key=value" override, where value is parsed as JSON when
/// possible and as a plain string otherwise. Leaves `config` untouched on error.
void apply_override(SweepConfig& config, const std::string& assignment);

}  // namespace adhoc::bench

#endif  // ADHOC_BENCH_CONFIG_HPP
