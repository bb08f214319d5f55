#include "adhoc/edp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <omp.h>

#include "adhoc/errors.hpp"

namespace adhoc {

std::optional<int> divergence_point(const StochasticPolicy& policy, const Trajectory& trajectory) {
  std::uint32_t prev = trajectory.initial;
  int t = 1;
  for (const auto& st : trajectory.steps) {
    if (prev >= policy.num_states() || policy.prob(prev, st.action) == 0.0) return t;
    prev = st.state;
    ++t;
  }
  return std::nullopt;
}

namespace {

const ActionProb& sample_row(std::span<const ActionProb> row, Rng& rng) {
  double u = rng.uniform01();
  for (const auto& e : row) {
    if (u < e.prob) return e;
    u -= e.prob;
  }
  return row.back();
}

void check_pair(const StochasticPolicy& first, const StochasticPolicy& second) {
  if (first.num_states() != second.num_states())
    throw InputError("EDP policies must share a state space");
}

inline double bellman(const StochasticPolicy& first, const StochasticPolicy& second,
                      std::span<const double> old, std::size_t s) {
  double shared = 0.0;
  double continued = 0.0;
  for (const auto& e : second.row(s)) {
    if (first.find(s, e.action) == nullptr) continue;
    shared += e.prob;
    continued += e.prob * (1.0 + old[e.next]);
  }
  return (1.0 - shared) + continued;
}

template <typename Sweep>
EdpTable evaluate(const StochasticPolicy& first, const StochasticPolicy& second, double epsilon,
                  std::size_t max_sweeps, Sweep sweep) {
  check_pair(first, second);
  if (!(epsilon > 0.0)) throw InputError("EDP epsilon must be positive");
  const std::size_t n = first.num_states();
  if (max_sweeps == 0) max_sweeps = 10 * n;

  std::vector<double> old(n, 0.0);
  std::vector<double> cur(n, 0.0);
  double change = std::numeric_limits<double>::infinity();
  std::size_t sweeps = 0;
  while (change > epsilon) {
    if (sweeps == max_sweeps)
      throw NonConvergenceError("EDP(" + std::to_string(first.goal()) + "|" +
                                std::to_string(second.goal()) + ") did not converge within " +
                                std::to_string(max_sweeps) + " sweeps (max change " +
                                std::to_string(change) + ")");
    change = sweep(first, second, old, cur);
    std::swap(old, cur);
    ++sweeps;
  }
  return EdpTable(first.goal(), second.goal(), std::move(old), epsilon, sweeps, change);
}

}  // namespace

Trajectory sample_trajectory(const StochasticPolicy& policy, std::uint32_t start, Rng& rng,
                             std::size_t max_steps) {
  Trajectory tr{start, {}};
  std::uint32_t s = start;
  for (std::size_t i = 0; i < max_steps; ++i) {
    const auto& e = sample_row(policy.row(s), rng);
    tr.steps.push_back({e.action, e.next});
    if (e.action.kind == ActionKind::Noop && e.next == s) break;
    s = e.next;
  }
  return tr;
}

double edp_residual(const StochasticPolicy& first, const StochasticPolicy& second,
                    std::span<const double> table, std::size_t state) {
  return std::abs(bellman(first, second, table, state) - table[state]);
}

double edp_sweep_serial(const StochasticPolicy& first, const StochasticPolicy& second,
                        std::span<const double> old, std::span<double> out) {
  double change = 0.0;
  for (std::size_t s = 0; s < old.size(); ++s) {
    out[s] = bellman(first, second, old, s);
    change = std::max(change, std::abs(out[s] - old[s]));
  }
  return change;
}

double edp_sweep(const StochasticPolicy& first, const StochasticPolicy& second,
                 std::span<const double> old, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(old.size());
  double change = 0.0;
#pragma omp parallel for schedule(static) reduction(max : change)
  for (std::int64_t s = 0; s < n; ++s) {
    out[s] = bellman(first, second, old, static_cast<std::size_t>(s));
    change = std::max(change, std::abs(out[s] - old[s]));
  }
  return change;
}

EdpTable edp_policy_evaluation(const StochasticPolicy& first, const StochasticPolicy& second,
                               double epsilon, std::size_t max_sweeps) {
  return evaluate(first, second, epsilon, max_sweeps, edp_sweep);
}

EdpTable edp_policy_evaluation_serial(const StochasticPolicy& first, const StochasticPolicy& second,
                                      double epsilon, std::size_t max_sweeps) {
  return evaluate(first, second, epsilon, max_sweeps, edp_sweep_serial);
}

MonteCarloEstimate edp_monte_carlo(const StochasticPolicy& first, const StochasticPolicy& second,
                                   std::uint32_t state, std::size_t samples, std::uint64_t seed,
                                   std::size_t step_cap) {
  check_pair(first, second);
  if (samples == 0) throw InputError("edp_monte_carlo needs at least one sample");
  if (state >= second.num_states()) throw InputError("edp_monte_carlo: state out of range");

  // Fixed-size chunks with their own streams; integer accumulators make the
  // result independent of scheduling.
  constexpr std::size_t kChunk = 4096;
  const auto chunks = static_cast<std::int64_t>((samples + kChunk - 1) / kChunk);
  std::uint64_t sum = 0;
  std::uint64_t sum_sq = 0;
  bool capped = false;

#pragma omp parallel for schedule(dynamic) reduction(+ : sum, sum_sq) reduction(|| : capped)
  for (std::int64_t c = 0; c < chunks; ++c) {
    Rng rng(derive_seed(seed, {state, static_cast<std::uint64_t>(c)}));
    const std::size_t begin = static_cast<std::size_t>(c) * kChunk;
    const std::size_t end = std::min(samples, begin + kChunk);
    for (std::size_t i = begin; i < end && !capped; ++i) {
      std::uint32_t s = state;
      std::uint64_t t = 0;
      while (true) {
        const auto& e = sample_row(second.row(s), rng);
        ++t;
        if (first.find(s, e.action) == nullptr) break;
        if (t >= step_cap) {
          capped = true;
          break;
        }
        s = e.next;
      }
      sum += t;
      sum_sq += t * t;
    }
  }
  if (capped)
    throw DivergenceImpossibleError("trajectory from state " + std::to_string(state) +
                                    " exceeded " + std::to_string(step_cap) +
                                    " steps without diverging");

  const double n = static_cast<double>(samples);
  const double mean = static_cast<double>(sum) / n;
  double var = 0.0;
  if (samples > 1) {
    var = (static_cast<double>(sum_sq) - n * mean * mean) / (n - 1.0);
    var = std::max(var, 0.0);
  }
  return {mean, std::sqrt(var / n)};
}

std::size_t monte_carlo_step_cap(const DomainInstance& instance) {
  return 10 * 2 * static_cast<std::size_t>(instance.width() + instance.height());
}

}  // namespace adhoc
