#ifndef ADHOC_EDP_HPP
#define ADHOC_EDP_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "adhoc/policy.hpp"
#include "adhoc/rng.hpp"

namespace adhoc {

struct TrajectoryStep {
  OnticAction action;
  std::uint32_t state = 0;  // state reached by the action
};

/// s0, a1, s1, a2, s2, ... over a policy's state index space.
struct Trajectory {
  std::uint32_t initial = 0;
  std::vector<TrajectoryStep> steps;
};

/// First 1-indexed timestep whose action `policy` would never take from the
/// preceding state, or nullopt if the whole trajectory is explained by it.
std::optional<int> divergence_point(const StochasticPolicy& policy, const Trajectory& trajectory);

/// Samples up to `max_steps` actions from `policy` starting at `start`,
/// stopping early at an absorbing Noop.
Trajectory sample_trajectory(const StochasticPolicy& policy, std::uint32_t start, Rng& rng,
                             std::size_t max_steps);

/// Expected divergence point of `first` from trajectories generated by
/// `second`, for every start state: EDP(s, first | second).
class EdpTable {
 public:
  EdpTable() = default;
  EdpTable(int first_goal, int second_goal, std::vector<double> values, double epsilon,
           std::size_t sweeps, double last_change)
      : first_goal_(first_goal),
        second_goal_(second_goal),
        values_(std::move(values)),
        epsilon_(epsilon),
        sweeps_(sweeps),
        last_change_(last_change) {}

  int first_goal() const { return first_goal_; }
  int second_goal() const { return second_goal_; }
  double at(std::size_t state) const { return values_.at(state); }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double epsilon() const { return epsilon_; }
  std::size_t sweeps() const { return sweeps_; }
  double last_change() const { return last_change_; }

  friend bool operator==(const EdpTable&, const EdpTable&) = default;

 private:
  int first_goal_ = -1;
  int second_goal_ = -1;
  std::vector<double> values_;
  double epsilon_ = 0.0;
  std::size_t sweeps_ = 0;
  double last_change_ = 0.0;
};

inline constexpr double kDefaultEdpEpsilon = 1e-6;

/// One Jacobi sweep of the EDP Bellman update: reads `old`, writes `out`,
/// returns the max-norm change. OpenMP-parallel across states.
double edp_sweep(const StochasticPolicy& first, const StochasticPolicy& second,
                 std::span<const double> old, std::span<double> out);

/// Single-threaded reference for edp_sweep.
double edp_sweep_serial(const StochasticPolicy& first, const StochasticPolicy& second,
                        std::span<const double> old, std::span<double> out);

/// Policy evaluation from the all-zero table until the max-norm change is at
/// most `epsilon`. `max_sweeps == 0` selects 10 * |S|.
/// Throws InputError for epsilon <= 0 or mismatched state spaces and
/// NonConvergenceError when the sweep budget runs out (e.g. identical
/// policies, which never diverge).
EdpTable edp_policy_evaluation(const StochasticPolicy& first, const StochasticPolicy& second,
                               double epsilon = kDefaultEdpEpsilon, std::size_t max_sweeps = 0);

EdpTable edp_policy_evaluation_serial(const StochasticPolicy& first, const StochasticPolicy& second,
                                      double epsilon = kDefaultEdpEpsilon,
                                      std::size_t max_sweeps = 0);

/// Residual of the Bellman equation at `state` for a given table.
double edp_residual(const StochasticPolicy& first, const StochasticPolicy& second,
                    std::span<const double> table, std::size_t state);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Sampling estimate of EDP(state, first | second). Trajectories longer than
/// `step_cap` raise DivergenceImpossibleError. Reproducible for a fixed seed
/// regardless of the OpenMP thread count.
MonteCarloEstimate edp_monte_carlo(const StochasticPolicy& first, const StochasticPolicy& second,
                                   std::uint32_t state, std::size_t samples, std::uint64_t seed,
                                   std::size_t step_cap);

/// Step cap used for grid policies: ten times the grid perimeter.
std::size_t monte_carlo_step_cap(const DomainInstance& instance);

}  // namespace adhoc

#endif  // ADHOC_EDP_HPP
