#ifndef ADHOC_BENCH_PLOTS_HPP
#define ADHOC_BENCH_PLOTS_HPP

#include <string>
#include <vector>

#include "adhoc/bench/sweep.hpp"

namespace adhoc::bench {

/// Writes plot data and SVG charts into `dir`:
///   marginal_cost.csv         mean marginal cost per (prior, planner, cost)
///   query_histogram.csv       queries per timestep per (prior, planner, cost)
///   marginal_cost_<prior>.svg line chart, one series per planner
///   query_histogram_<prior>.svg bars at the lowest per-station cost
/// CSVs are always written (header only for empty results). Returns the
/// paths written. Throws IoError when `dir` cannot be written.
std::vector<std::string> emit_plots(const SweepResults& results, const std::string& dir);

}  // namespace adhoc::bench

#endif  // ADHOC_BENCH_PLOTS_HPP
