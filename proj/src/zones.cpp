#include "adhoc/zones.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "adhoc/errors.hpp"

namespace adhoc {

namespace {

constexpr int kUnknown = 0;
constexpr int kInProgress = -1;

int wcd_visit(const StochasticPolicy& first, const StochasticPolicy& second, std::uint32_t s,
              std::vector<int>& memo) {
  if (memo[s] > 0) return memo[s];
  if (memo[s] == kInProgress)
    throw InputError("policies for goals " + std::to_string(first.goal()) + " and " +
                     std::to_string(second.goal()) + " share a cycle and never diverge");
  memo[s] = kInProgress;
  int worst = 1;
  for (const auto& e : second.row(s)) {
    if (first.find(s, e.action) == nullptr) continue;
    worst = std::max(worst, 1 + wcd_visit(first, second, e.next, memo));
  }
  memo[s] = worst;
  return worst;
}

void check_same_space(const StochasticPolicy& first, const StochasticPolicy& second) {
  if (first.num_states() != second.num_states())
    throw InputError("wcd_dp: policies must share a state space");
}

}  // namespace

int wcd_dp(const StochasticPolicy& first, const StochasticPolicy& second, std::uint32_t state) {
  return wcd_dp_many(first, second, {state}).front();
}

std::vector<int> wcd_dp_many(const StochasticPolicy& first, const StochasticPolicy& second,
                             const std::vector<std::uint32_t>& states) {
  check_same_space(first, second);
  std::vector<int> memo(first.num_states(), kUnknown);
  std::vector<int> out;
  out.reserve(states.size());
  for (auto s : states) {
    if (s >= first.num_states()) throw InputError("wcd_dp: state out of range");
    out.push_back(wcd_visit(first, second, s, memo));
  }
  return out;
}

int zone_information(const StochasticPolicy& worker_first, const StochasticPolicy& worker_second,
                     std::uint32_t worker_state) {
  return std::max(wcd_dp(worker_first, worker_second, worker_state),
                  wcd_dp(worker_second, worker_first, worker_state));
}

int zone_branching(const StochasticPolicy& fetcher_first, const StochasticPolicy& fetcher_second,
                   std::uint32_t fetcher_state) {
  return std::min(wcd_dp(fetcher_first, fetcher_second, fetcher_state),
                  wcd_dp(fetcher_second, fetcher_first, fetcher_state));
}

IntInterval zone_querying(int info_until, int branch_from) { return {branch_from, info_until}; }

double expected_zone_information(const EdpTable& table, std::uint32_t worker_state) {
  return table.at(worker_state);
}

IntInterval expected_zone_querying(const ZoneThresholds& thresholds) {
  return {thresholds.branch_from, static_cast<int>(std::floor(thresholds.expected_info_until))};
}

int interval_union_size(std::vector<IntInterval> intervals) {
  std::erase_if(intervals, [](const IntInterval& iv) { return iv.empty(); });
  if (intervals.empty()) return 0;
  std::sort(intervals.begin(), intervals.end(),
            [](const IntInterval& a, const IntInterval& b) { return a.lo < b.lo; });
  int total = 0;
  IntInterval cur = intervals.front();
  for (std::size_t i = 1; i < intervals.size(); ++i) {
    const auto& iv = intervals[i];
    if (iv.lo <= cur.hi + 1) {
      cur.hi = std::max(cur.hi, iv.hi);
    } else {
      total += cur.size();
      cur = iv;
    }
  }
  return total + cur.size();
}

ZoneTables::ZoneTables(int num_goals, int num_cells, std::vector<EdpTable> edp,
                       std::vector<std::vector<int>> info_until,
                       std::vector<std::vector<int>> branch_from)
    : num_goals_(num_goals),
      num_cells_(num_cells),
      edp_(std::move(edp)),
      info_until_(std::move(info_until)),
      branch_from_(std::move(branch_from)) {
  const auto n = static_cast<std::size_t>(num_goals_);
  if (num_goals_ < 2 || num_cells_ < 1) throw InputError("zone tables need >= 2 goals and >= 1 cell");
  if (edp_.size() != n * n) throw InputError("zone tables: wrong number of EDP tables");
  if (info_until_.size() != pair_count(num_goals_) || branch_from_.size() != pair_count(num_goals_))
    throw InputError("zone tables: wrong number of WCD tables");
  for (int a = 0; a < num_goals_; ++a)
    for (int b = 0; b < num_goals_; ++b)
      if (a != b && edp_[a * n + b].size() != static_cast<std::size_t>(num_cells_))
        throw InputError("zone tables: EDP table has the wrong size");
  for (std::size_t p = 0; p < info_until_.size(); ++p)
    if (info_until_[p].size() != static_cast<std::size_t>(num_cells_) ||
        branch_from_[p].size() != static_cast<std::size_t>(num_cells_))
      throw InputError("zone tables: WCD table has the wrong size");
}

std::size_t ZoneTables::pair_index(int g1, int g2) {
  if (g1 == g2) throw InputError("zone pair needs two distinct goals");
  const auto lo = static_cast<std::size_t>(std::min(g1, g2));
  const auto hi = static_cast<std::size_t>(std::max(g1, g2));
  return hi * (hi - 1) / 2 + lo;
}

const EdpTable& ZoneTables::edp(int first, int second) const {
  if (first == second || first < 0 || second < 0 || first >= num_goals_ || second >= num_goals_)
    throw InputError("no EDP table for pair (" + std::to_string(first) + "|" +
                     std::to_string(second) + ")");
  return edp_[static_cast<std::size_t>(first) * num_goals_ + second];
}

int ZoneTables::info_until(int g1, int g2, int worker_cell) const {
  return info_until_.at(pair_index(g1, g2)).at(worker_cell);
}

int ZoneTables::branch_from(int g1, int g2, int fetcher_cell) const {
  return branch_from_.at(pair_index(g1, g2)).at(fetcher_cell);
}

ZoneThresholds ZoneTables::thresholds(int first, int second, int worker_cell, int fetcher_cell) const {
  ZoneThresholds z;
  z.first_goal = first;
  z.second_goal = second;
  z.info_until = info_until(first, second, worker_cell);
  z.branch_from = branch_from(first, second, fetcher_cell);
  z.expected_info_until = edp(first, second).at(worker_cell);
  return z;
}

namespace {

struct PairWork {
  int a;
  int b;
};

template <bool Parallel>
ZoneTables build_tables(const DomainInstance& instance, const PolicySet& policies, double epsilon) {
  const int n = instance.num_stations();
  const int cells = instance.num_cells();
  if (static_cast<int>(policies.worker.size()) != n || static_cast<int>(policies.fetcher.size()) != n)
    throw InputError("policy set does not match the instance");

  std::vector<std::uint32_t> worker_states(cells);
  std::vector<std::uint32_t> fetcher_states(cells);
  for (int c = 0; c < cells; ++c) {
    worker_states[c] = static_cast<std::uint32_t>(c);
    fetcher_states[c] = static_cast<std::uint32_t>(instance.fetcher_state({instance.cell_at(c), {}}));
  }

  std::vector<PairWork> work;
  for (int a = 1; a < n; ++a)
    for (int b = 0; b < a; ++b) work.push_back({a, b});

  std::vector<EdpTable> edp(static_cast<std::size_t>(n) * n);
  std::vector<std::vector<int>> info(work.size());
  std::vector<std::vector<int>> branch(work.size());

  const auto count = static_cast<std::int64_t>(work.size());
  std::vector<std::exception_ptr> errors(work.size());
#pragma omp parallel for schedule(dynamic) if (Parallel)
  for (std::int64_t i = 0; i < count; ++i) try {
    const auto [a, b] = work[i];
    const auto& wa = policies.worker[a];
    const auto& wb = policies.worker[b];
    edp[static_cast<std::size_t>(a) * n + b] = edp_policy_evaluation_serial(wa, wb, epsilon);
    edp[static_cast<std::size_t>(b) * n + a] = edp_policy_evaluation_serial(wb, wa, epsilon);

    auto ab = wcd_dp_many(wa, wb, worker_states);
    auto ba = wcd_dp_many(wb, wa, worker_states);
    for (int c = 0; c < cells; ++c) ab[c] = std::max(ab[c], ba[c]);
    info[ZoneTables::pair_index(a, b)] = std::move(ab);

    const auto& fa = policies.fetcher[a];
    const auto& fb = policies.fetcher[b];
    auto fab = wcd_dp_many(fa, fb, fetcher_states);
    auto fba = wcd_dp_many(fb, fa, fetcher_states);
    for (int c = 0; c < cells; ++c) fab[c] = std::min(fab[c], fba[c]);
    branch[ZoneTables::pair_index(a, b)] = std::move(fab);
  } catch (...) {
    errors[i] = std::current_exception();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return ZoneTables(n, cells, std::move(edp), std::move(info), std::move(branch));
}

}  // namespace

ZoneTables ZoneTables::build(const DomainInstance& instance, const PolicySet& policies,
                             double epsilon) {
  return build_tables<true>(instance, policies, epsilon);
}

ZoneTables ZoneTables::build_serial(const DomainInstance& instance, const PolicySet& policies,
                                    double epsilon) {
  return build_tables<false>(instance, policies, epsilon);
}

}  // namespace adhoc
