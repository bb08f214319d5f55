#ifndef ADHOC_BENCH_SWEEP_HPP
#define ADHOC_BENCH_SWEEP_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "adhoc/bench/config.hpp"
#include "adhoc/sim.hpp"

namespace adhoc::bench {

/// One simulated episode of the sweep grid.
struct SweepRow {
  int instance_id = 0;
  PriorKind prior = PriorKind::Uniform;
  double per_station_cost = 0.0;
  PlannerKind planner = PlannerKind::EZQ;
  std::uint64_t seed = 0;
  int true_goal = -1;
  double total_cost = 0.0;
  double marginal_cost = 0.0;
  int num_queries = 0;
  std::vector<int> query_timesteps;
  std::string trace;
  double max_decision_seconds = 0.0;
};

/// Mean over one (prior, per-station cost, planner) cell, plus a paired sign
/// test against the eZ_Q planner on identical episodes.
struct SummaryRow {
  PriorKind prior = PriorKind::Uniform;
  double per_station_cost = 0.0;
  PlannerKind planner = PlannerKind::EZQ;
  int episodes = 0;
  double mean_marginal_cost = 0.0;
  double stderr_marginal_cost = 0.0;
  int total_queries = 0;
  int ezq_better = 0;  // episodes where eZ_Q had lower marginal cost
  int ezq_worse = 0;
  double sign_test_p = 1.0;
};

/// Query counts per (prior, cost, planner, timestep).
using HistogramKey = std::tuple<PriorKind, double, PlannerKind, int>;

struct SweepResults {
  std::vector<SweepRow> rows;  // sorted by (instance, prior, cost, planner, seed)
  std::map<HistogramKey, int> histogram;
  std::vector<std::string> diagnostics;  // failed cells
  double precompute_seconds = 0.0;
  double max_decision_seconds = 0.0;
};

/// Seed of episode `episode` of instance `instance_id` under `prior`; the
/// true goal is drawn from the prior with a stream derived from it.
std::uint64_t episode_seed(const SweepConfig& config, int instance_id, PriorKind prior, int episode);
int sample_true_goal(const DomainInstance& instance, const GoalPrior& prior, std::uint64_t seed);

/// Episode configuration for one sweep cell.
EpisodeConfig episode_config(const SweepConfig& config, PriorKind prior, double per_station_cost,
                             PlannerKind planner, std::uint64_t seed);

/// Runs every (instance, prior, per-station cost, planner, episode) cell.
/// Instances run in parallel; output is independent of scheduling. When
/// `cache_dir` is set, precomputed tables are read from (and written to)
/// `<cache_dir>/instance_<id>.cache`.
SweepResults run_sweep(const SweepConfig& config, const std::optional<std::string>& cache_dir = {});

std::vector<SummaryRow> summarize(const SweepResults& results);

/// Two-sided exact sign test p-value for `wins` vs `losses` (ties dropped).
double sign_test_p_value(int wins, int losses);

/// Writes results.csv, histogram.csv, summary.csv and traces.csv into `dir`
/// (created if missing). Byte-identical for identical results.
void write_sweep_outputs(const SweepResults& results, const std::string& dir);

/// Reads back results.csv and histogram.csv written by write_sweep_outputs.
SweepResults load_sweep_outputs(const std::string& dir);

std::string format_number(double v);

}  // namespace adhoc::bench

#endif  // ADHOC_BENCH_SWEEP_HPP
