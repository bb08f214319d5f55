#include "adhoc/query.hpp"

#include <algorithm>
#include <limits>

#include "adhoc/errors.hpp"

namespace adhoc {

Query::Query(std::vector<int> stations) : stations_(std::move(stations)) {
  std::sort(stations_.begin(), stations_.end());
  stations_.erase(std::unique(stations_.begin(), stations_.end()), stations_.end());
  if (stations_.empty()) throw InputError("a query must name at least one station");
  if (stations_.front() < 0) throw InputError("query names a negative station index");
}

bool Query::contains(int g) const { return std::binary_search(stations_.begin(), stations_.end(), g); }

void Query::validate(int num_stations) const {
  if (stations_.back() >= num_stations) throw InputError("query names an unknown station");
}

std::string to_string(const Query& q) {
  std::string s = "{";
  for (std::size_t i = 0; i < q.stations().size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(q.stations()[i]);
  }
  return s + "}";
}

double query_cost(const CostModel& model, std::size_t num_stations) {
  return model.query_base + static_cast<double>(num_stations) * model.per_station;
}

double query_cost(const CostModel& model, const Query& q) { return query_cost(model, q.size()); }

ZoneSnapshot::ZoneSnapshot(const ZoneTables& tables, std::vector<int> support, int worker_cell,
                           int fetcher_cell)
    : support_(std::move(support)) {
  const std::size_t n = support_.size();
  expected_.assign(n, std::vector<IntInterval>(n));
  worst_.assign(n, std::vector<IntInterval>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const ZoneThresholds z = tables.thresholds(support_[j], support_[i], worker_cell, fetcher_cell);
      expected_[i][j] = expected_zone_querying(z);
      worst_[i][j] = zone_querying(z.info_until, z.branch_from);
    }
  }
}

ZoneSnapshot::ZoneSnapshot(std::vector<int> support, std::vector<std::vector<IntInterval>> intervals,
                           std::vector<std::vector<IntInterval>> worst_case)
    : support_(std::move(support)), expected_(std::move(intervals)), worst_(std::move(worst_case)) {
  const std::size_t n = support_.size();
  if (expected_.size() != n || worst_.size() != n) throw InputError("zone snapshot shape mismatch");
  for (std::size_t i = 0; i < n; ++i)
    if (expected_[i].size() != n || worst_[i].size() != n)
      throw InputError("zone snapshot shape mismatch");
}

int ZoneSnapshot::position(int g) const {
  auto it = std::find(support_.begin(), support_.end(), g);
  return it == support_.end() ? -1 : static_cast<int>(it - support_.begin());
}

bool ZoneSnapshot::in_any_zq(int t) const {
  for (std::size_t a = 0; a < support_.size(); ++a)
    for (std::size_t b = a + 1; b < support_.size(); ++b)
      if (worst_[a][b].contains(t)) return true;
  return false;
}

double expected_blocked_steps(const ZoneSnapshot& zones, std::size_t truth,
                              const std::vector<std::size_t>& candidates) {
  std::vector<IntInterval> intervals;
  intervals.reserve(candidates.size());
  for (std::size_t other : candidates)
    if (other != truth) intervals.push_back(zones.expected(truth, other));
  return interval_union_size(std::move(intervals));
}

namespace {

void check_alignment(const Belief& belief, const ZoneSnapshot& zones) {
  if (belief.support() != zones.support())
    throw InputError("zone snapshot was built for a different belief support");
}

}  // namespace

double value_of_query(const std::vector<bool>& in_query, const Belief& belief,
                      const ZoneSnapshot& zones) {
  check_alignment(belief, zones);
  const std::size_t n = zones.support().size();
  if (in_query.size() != n) throw InputError("query flags must cover the support");
  if (n < 2) return 0.0;

  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  std::vector<std::size_t> yes, no;
  for (std::size_t i = 0; i < n; ++i) (in_query[i] ? yes : no).push_back(i);
  if (yes.empty() || no.empty()) return 0.0;

  double value = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = belief[zones.support()[i]];
    const double before = expected_blocked_steps(zones, i, all);
    const double after = expected_blocked_steps(zones, i, in_query[i] ? yes : no);
    value += p * (before - after);
  }
  return value;
}

double value_of_query(const Query& q, const Belief& belief, const ZoneSnapshot& zones) {
  std::vector<bool> flags(zones.support().size());
  for (std::size_t i = 0; i < flags.size(); ++i) flags[i] = q.contains(zones.support()[i]);
  return value_of_query(flags, belief, zones);
}

double query_net_value(const std::vector<bool>& in_query, const Belief& belief, const ZoneSnapshot& zones,
                       const CostModel& cost) {
  const auto asked = static_cast<std::size_t>(std::count(in_query.begin(), in_query.end(), true));
  if (asked == 0) return -std::numeric_limits<double>::infinity();
  return value_of_query(in_query, belief, zones) - query_cost(cost, asked);
}

double expected_blocked_steps(const Belief& belief, const ZoneSnapshot& zones) {
  check_alignment(belief, zones);
  const std::size_t n = zones.support().size();
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    total += belief[zones.support()[i]] * expected_blocked_steps(zones, i, all);
  return total;
}

}  // namespace adhoc
