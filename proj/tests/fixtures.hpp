#ifndef ADHOC_TESTS_FIXTURES_HPP
#define ADHOC_TESTS_FIXTURES_HPP

// Hand-built instances and brute-force oracles shared by the unit tests and
// the acceptance suite. Oracles avoid the library's own shortcuts (binomial
// plan counts, Bellman sweeps, memoized WCD) so they check them independently.

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "adhoc/domain.hpp"
#include "adhoc/edp.hpp"
#include "adhoc/optim.hpp"
#include "adhoc/query.hpp"
#include "adhoc/policy.hpp"
#include "adhoc/rng.hpp"

namespace fixtures {

using namespace adhoc;

// Worker at (4,3) with goals (8,4) and (8,2): four shared eastward steps
// before the plans must split. Both tools sit in one toolbox at (5,7).
inline DomainInstance figure_one(Coord fetcher) {
  return DomainInstance(10, 8, {{8, 4}, {8, 2}}, {{5, 7}}, {0, 0}, {4, 3}, fetcher);
}

// Fetcher state index at `c` with nothing in hand.
inline std::uint32_t empty_handed(const DomainInstance& inst, Coord c) {
  return static_cast<std::uint32_t>(inst.fetcher_state({c, std::nullopt}));
}

// Breadth-first distance over the 4-connected grid.
inline int bfs_distance(int width, int height, Coord from, Coord to) {
  std::vector<int> dist(static_cast<std::size_t>(width) * height, -1);
  auto idx = [&](Coord c) { return static_cast<std::size_t>(c.y) * width + c.x; };
  std::deque<Coord> queue{from};
  dist[idx(from)] = 0;
  while (!queue.empty()) {
    const Coord c = queue.front();
    queue.pop_front();
    if (c == to) return dist[idx(c)];
    const Coord next[4] = {{c.x, c.y + 1}, {c.x, c.y - 1}, {c.x + 1, c.y}, {c.x - 1, c.y}};
    for (Coord n : next) {
      if (n.x < 0 || n.y < 0 || n.x >= width || n.y >= height || dist[idx(n)] >= 0) continue;
      dist[idx(n)] = dist[idx(c)] + 1;
      queue.push_back(n);
    }
  }
  return -1;
}

// Every minimal move sequence from -> to, enumerated by depth-first search
// with the BFS distance as the length budget.
inline std::vector<std::vector<ActionKind>> enumerate_plans(int width, int height, Coord from, Coord to) {
  const int d = bfs_distance(width, height, from, to);
  std::vector<std::vector<ActionKind>> plans;
  std::vector<ActionKind> cur;
  std::function<void(Coord)> dfs = [&](Coord c) {
    if (static_cast<int>(cur.size()) == d) {
      if (c == to) plans.push_back(cur);
      return;
    }
    for (const auto& m : kMoves) {
      const Coord n = apply_move(c, m.kind);
      if (n.x < 0 || n.y < 0 || n.x >= width || n.y >= height) continue;
      if (bfs_distance(width, height, n, to) != d - static_cast<int>(cur.size()) - 1) continue;
      cur.push_back(m.kind);
      dfs(n);
      cur.pop_back();
    }
  };
  dfs(from);
  return plans;
}

// Share of minimal plans starting with each move.
inline std::map<ActionKind, double> first_move_shares(int width, int height, Coord from, Coord to) {
  const auto plans = enumerate_plans(width, height, from, to);
  std::map<ActionKind, double> shares;
  for (const auto& p : plans) shares[p.front()] += 1.0 / plans.size();
  return shares;
}

// Worst-case divergence point by exhaustive enumeration of every trajectory
// in the support of `second`. Returns -1 if some trajectory never diverges
// within `horizon` steps.
inline int wcd_enumerate(const StochasticPolicy& first, const StochasticPolicy& second, std::uint32_t state,
                         int horizon = 200) {
  int worst = 0;
  std::function<bool(std::uint32_t, int)> walk = [&](std::uint32_t s, int t) {
    if (t > horizon) return false;
    for (const auto& e : second.row(s)) {
      if (!first.find(s, e.action)) {
        worst = std::max(worst, t);
      } else if (!walk(e.next, t + 1)) {
        return false;
      }
    }
    return true;
  };
  return walk(state, 1) ? worst : -1;
}

// EDP by solving (I - M) x = 1 with Gaussian elimination, where
// M[s][s'] = sum of second's probability on shared actions leading to s'.
inline std::vector<double> edp_linear_solve(const StochasticPolicy& first, const StochasticPolicy& second) {
  const std::size_t n = second.num_states();
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t s = 0; s < n; ++s) {
    a[s][s] = 1.0;
    a[s][n] = 1.0;
    for (const auto& e : second.row(s))
      if (first.find(s, e.action)) a[s][e.next] -= e.prob;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0.0) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t s = 0; s < n; ++s) x[s] = a[s][n] / a[s][s];
  return x;
}

// Random instance with distinct station cells and distinct toolbox cells.
inline DomainInstance random_instance(int width, int height, int stations, int toolboxes, std::uint64_t seed) {
  Rng rng(seed);
  auto pick = [&](int k) {
    std::set<std::pair<int, int>> used;
    std::vector<Coord> out;
    while (static_cast<int>(out.size()) < k) {
      Coord c{static_cast<int>(rng.below(width)), static_cast<int>(rng.below(height))};
      if (used.insert({c.x, c.y}).second) out.push_back(c);
    }
    return out;
  };
  auto s = pick(stations);
  auto t = pick(toolboxes);
  std::vector<int> tool_of(stations);
  for (auto& v : tool_of) v = static_cast<int>(rng.below(toolboxes));
  Coord w{static_cast<int>(rng.below(width)), static_cast<int>(rng.below(height))};
  Coord f{static_cast<int>(rng.below(width)), static_cast<int>(rng.below(height))};
  return DomainInstance(width, height, s, t, tool_of, w, f);
}

// Exhaustive maximizer of the pair-splitting objective with the documented
// tie rule: within 1e-9, fewer set bits win, then the lexicographically
// smallest vector.
inline ObjectiveSolution brute_force_objective(const std::vector<GoalPair>& pairs,
                                               const std::vector<double>& probs, double sc) {
  const std::size_t n = probs.size();
  ObjectiveSolution best{BitVector(n, 0), 0.0};
  bool have = false;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    BitVector x(n);
    int ones = 0;
    for (std::size_t i = 0; i < n; ++i) ones += x[i] = (mask >> i) & 1;
    double obj = 0;
    for (auto [i, j] : pairs)
      if (x[i] != x[j]) obj += probs[i] + probs[j];
    obj -= sc * ones;
    const int best_ones = static_cast<int>(std::count(best.x.begin(), best.x.end(), 1));
    const bool better = !have || obj > best.objective + 1e-9 ||
                        (std::abs(obj - best.objective) <= 1e-9 &&
                         (ones < best_ones || (ones == best_ones && x < best.x)));
    if (better) best = {x, obj};
    have = true;
  }
  return best;
}

// Random expected/worst-case zone grid over `n` goals for query-value tests.
inline ZoneSnapshot random_snapshot(std::size_t n, Rng& rng) {
  std::vector<std::vector<IntInterval>> e(n, std::vector<IntInterval>(n)), w = e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const int lo = 1 + static_cast<int>(rng.below(3));
      e[i][j] = {lo, lo + static_cast<int>(rng.below(6)) - 1};
      w[i][j] = {1, 6};
    }
  std::vector<int> support(n);
  for (std::size_t i = 0; i < n; ++i) support[i] = static_cast<int>(i);
  return ZoneSnapshot(support, e, w);
}

// Random strictly positive belief over `n` goals.
inline std::vector<double> random_weights(std::size_t n, Rng& rng) {
  std::vector<double> w(n);
  for (auto& v : w) v = 0.05 + rng.uniform01();
  return w;
}

// Best value - cost over every nonempty subset of the support.
inline double brute_force_query_value(const Belief& belief, const ZoneSnapshot& z, const CostModel& cost) {
  const std::size_t n = z.support().size();
  double best = -1e300;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<bool> flags(n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) k += flags[i] = (mask >> i) & 1;
    best = std::max(best, value_of_query(flags, belief, z) - query_cost(cost, k));
  }
  return best;
}

}  // namespace fixtures

#endif  // ADHOC_TESTS_FIXTURES_HPP
