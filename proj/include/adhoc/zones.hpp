#ifndef ADHOC_ZONES_HPP
#define ADHOC_ZONES_HPP

#include <cstdint>
#include <vector>

#include "adhoc/edp.hpp"
#include "adhoc/policy.hpp"

namespace adhoc {

/// Closed integer interval [lo, hi]; empty when lo > hi.
struct IntInterval {
  int lo = 1;
  int hi = 0;

  bool empty() const { return lo > hi; }
  int size() const { return empty() ? 0 : hi - lo + 1; }
  bool contains(int t) const { return lo <= t && t <= hi; }
  friend bool operator==(const IntInterval&, const IntInterval&) = default;
};

/// Worst-case divergence point of `first` over every trajectory in the
/// support of `second` from `state`:
///   wcd(s) = 1                                   if no action is shared,
///            1 + max_{shared a} wcd(next(s, a))  otherwise.
/// Throws InputError when a shared cycle exists (the policies never diverge).
int wcd_dp(const StochasticPolicy& first, const StochasticPolicy& second, std::uint32_t state);

/// wcd_dp for every state in `states`, sharing one memo.
std::vector<int> wcd_dp_many(const StochasticPolicy& first, const StochasticPolicy& second,
                             const std::vector<std::uint32_t>& states);

/// Zone boundaries for a goal pair relative to the current timestep (t = 1 is
/// the next joint action).
struct ZoneThresholds {
  int first_goal = -1;
  int second_goal = -1;
  int info_until = 1;                // Z_I = {t <= info_until}
  int branch_from = 1;               // Z_B = {t >= branch_from}
  double expected_info_until = 1.0;  // eZ_I = {t <= EDP(first | second)}
};

/// Upper edge of Z_I: the larger worst-case divergence point over both
/// orderings of the worker's URO policies.
int zone_information(const StochasticPolicy& worker_first, const StochasticPolicy& worker_second,
                     std::uint32_t worker_state);

/// Lower edge of Z_B: the smaller worst-case divergence point over both
/// orderings of the fetcher's URO policies. Also stands in for eZ_B, which
/// coincides with it for an ego agent that acts optimally on its knowledge.
int zone_branching(const StochasticPolicy& fetcher_first, const StochasticPolicy& fetcher_second,
                   std::uint32_t fetcher_state);

/// Z_Q = Z_I intersected with Z_B.
IntInterval zone_querying(int info_until, int branch_from);

/// Upper edge of eZ_I read from the ordered EDP table.
double expected_zone_information(const EdpTable& table, std::uint32_t worker_state);

/// eZ_Q = {t : branch_from <= t <= floor(expected_info_until)}.
IntInterval expected_zone_querying(const ZoneThresholds& thresholds);

/// Cardinality of a union of integer intervals.
int interval_union_size(std::vector<IntInterval> intervals);

/// All per-instance tables the planners read at decision time:
///  - EDP(first | second) for every ordered pair of worker goals,
///  - info_until for every unordered pair at every worker cell,
///  - branch_from for every unordered pair at every empty-handed fetcher cell.
class ZoneTables {
 public:
  ZoneTables() = default;
  ZoneTables(int num_goals, int num_cells, std::vector<EdpTable> edp,
             std::vector<std::vector<int>> info_until, std::vector<std::vector<int>> branch_from);

  /// Computes every table; OpenMP-parallel across goal pairs.
  static ZoneTables build(const DomainInstance& instance, const PolicySet& policies,
                          double epsilon = kDefaultEdpEpsilon);
  /// Single-threaded reference for build().
  static ZoneTables build_serial(const DomainInstance& instance, const PolicySet& policies,
                                 double epsilon = kDefaultEdpEpsilon);

  int num_goals() const { return num_goals_; }
  int num_cells() const { return num_cells_; }

  const EdpTable& edp(int first, int second) const;
  int info_until(int g1, int g2, int worker_cell) const;
  /// Indexed by the cell of an empty-handed fetcher; zones are only meaningful
  /// while it is still undecided.
  int branch_from(int g1, int g2, int fetcher_cell) const;

  ZoneThresholds thresholds(int first, int second, int worker_cell, int fetcher_cell) const;

  /// Index of an unordered pair (g1 != g2) into the per-pair vectors.
  static std::size_t pair_index(int g1, int g2);
  static std::size_t pair_count(int num_goals) {
    return static_cast<std::size_t>(num_goals) * (num_goals - 1) / 2;
  }

  const std::vector<EdpTable>& edp_tables() const { return edp_; }
  const std::vector<std::vector<int>>& info_tables() const { return info_until_; }
  const std::vector<std::vector<int>>& branch_tables() const { return branch_from_; }

  friend bool operator==(const ZoneTables&, const ZoneTables&) = default;

 private:
  int num_goals_ = 0;
  int num_cells_ = 0;
  std::vector<EdpTable> edp_;                   // first * n + second; diagonal left empty
  std::vector<std::vector<int>> info_until_;    // pair_index -> worker cell
  std::vector<std::vector<int>> branch_from_;   // pair_index -> fetcher cell
};

}  // namespace adhoc

#endif  // ADHOC_ZONES_HPP
