#ifndef ADHOC_QUERY_HPP
#define ADHOC_QUERY_HPP

#include <string>
#include <vector>

#include "adhoc/belief.hpp"
#include "adhoc/zones.hpp"

namespace adhoc {

/// "Is your goal one of these stations?" Stations are kept sorted and unique.
class Query {
 public:
  explicit Query(std::vector<int> stations);

  const std::vector<int>& stations() const { return stations_; }
  std::size_t size() const { return stations_.size(); }
  bool contains(int g) const;
  /// Throws InputError if any station is not a valid index for `num_stations`.
  void validate(int num_stations) const;

  friend bool operator==(const Query&, const Query&) = default;

 private:
  std::vector<int> stations_;
};

std::string to_string(const Query& q);

struct CostModel {
  static constexpr double kOnticCost = 1.0;  // every joint ontic timestep
  double query_base = 0.5;
  double per_station = 0.0;
};

/// query_base + |q| * per_station.
double query_cost(const CostModel& model, const Query& q);
double query_cost(const CostModel& model, std::size_t num_stations);

/// Expected zones of querying for the supported goals at one decision point.
/// For every ordered pair (other | truth) of supported goals it holds
/// eZ_Q(s, other | truth) = [branch_from(other, truth), floor(EDP(other | truth))].
class ZoneSnapshot {
 public:
  ZoneSnapshot(const ZoneTables& tables, std::vector<int> support, int worker_cell, int fetcher_cell);

  /// Builds a snapshot from explicit intervals; `intervals[i][j]` is
  /// eZ_Q(support[j] | support[i]). Used for hand-made fixtures.
  ZoneSnapshot(std::vector<int> support, std::vector<std::vector<IntInterval>> intervals,
               std::vector<std::vector<IntInterval>> worst_case);

  const std::vector<int>& support() const { return support_; }
  /// Position of goal g in the support, or -1.
  int position(int g) const;

  /// eZ_Q(support[other] | support[truth]) by support position.
  const IntInterval& expected(std::size_t truth, std::size_t other) const {
    return expected_[truth][other];
  }
  /// Z_Q of the unordered pair by support position.
  const IntInterval& worst_case(std::size_t a, std::size_t b) const { return worst_[a][b]; }

  /// True when some supported pair has `t` inside its Z_Q.
  bool in_any_zq(int t) const;
  /// True when `t` is inside Z_B for support positions a, b.
  bool in_zb(std::size_t a, std::size_t b, int t) const { return worst_[a][b].lo <= t; }

 private:
  std::vector<int> support_;
  std::vector<std::vector<IntInterval>> expected_;
  std::vector<std::vector<IntInterval>> worst_;
};

/// Expected timesteps the fetcher is blocked if the truth is `truth` and the
/// remaining candidates are `candidates` (support positions, must include
/// truth): |union over other in candidates, other != truth, of eZ_Q(other | truth)|.
double expected_blocked_steps(const ZoneSnapshot& zones, std::size_t truth,
                              const std::vector<std::size_t>& candidates);

/// Value of asking `in_query` (one flag per support position):
///   sum_g P(g) * [B(g, S) - B(g, S ∩ resp(g, q))]
/// where resp(g, q) is q when g is in q and its complement otherwise.
double value_of_query(const std::vector<bool>& in_query, const Belief& belief,
                      const ZoneSnapshot& zones);

double value_of_query(const Query& q, const Belief& belief, const ZoneSnapshot& zones);

/// value_of_query - query_cost; minus infinity for the empty vector, which is
/// not a query. Fitness of the eZ_Q query search.
double query_net_value(const std::vector<bool>& in_query, const Belief& belief, const ZoneSnapshot& zones,
                       const CostModel& cost);

/// Expected blocked steps under the current belief, sum_g P(g) * B(g, S).
double expected_blocked_steps(const Belief& belief, const ZoneSnapshot& zones);

inline Belief observe_response(const Belief& belief, const Query& q, bool yes) {
  return observe_response(belief, q.stations(), yes);
}

}  // namespace adhoc

#endif  // ADHOC_QUERY_HPP
