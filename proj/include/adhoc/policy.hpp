#ifndef ADHOC_POLICY_HPP
#define ADHOC_POLICY_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "adhoc/domain.hpp"

namespace adhoc {

enum class AgentKind : std::uint8_t { Worker, Fetcher };

/// One action of a policy row together with its (deterministic) successor
/// state index.
struct ActionProb {
  OnticAction action;
  double prob = 0.0;
  std::uint32_t next = 0;
};

/// Tabular stochastic policy over a dense state index space. Transitions are
/// stored alongside the action probabilities so that policy evaluation needs
/// nothing else from the domain.
class StochasticPolicy {
 public:
  using Row = std::vector<ActionProb>;

  /// Validates that every row is a distribution and every successor is a
  /// valid state. Zero-probability entries are dropped.
  StochasticPolicy(AgentKind agent, int goal, const std::vector<Row>& rows);

  AgentKind agent() const { return agent_; }
  int goal() const { return goal_; }
  std::size_t num_states() const { return offsets_.size() - 1; }

  std::span<const ActionProb> row(std::size_t state) const {
    return {entries_.data() + offsets_[state], entries_.data() + offsets_[state + 1]};
  }

  /// Probability of `action` in `state`; 0 when the action is outside the support.
  double prob(std::size_t state, const OnticAction& action) const;

  /// Successor of `action` in `state` if the action is in the support.
  const ActionProb* find(std::size_t state, const OnticAction& action) const;

 private:
  AgentKind agent_;
  int goal_;
  std::vector<std::uint32_t> offsets_;
  std::vector<ActionProb> entries_;
};

/// Uniformly-random-optimal worker policy for `goal`: each move is weighted by
/// the number of minimal plans that begin with it. Absorbing Noop at the goal.
StochasticPolicy worker_urop(const DomainInstance& instance, int goal);

/// Uniformly-random-optimal fetcher policy for `goal` over FetcherState
/// indices: reach the goal's toolbox, pick up its tool, carry it to the
/// station. States holding a different tool are unreachable under this plan
/// family and are given an absorbing Noop.
StochasticPolicy fetcher_urop(const DomainInstance& instance, int goal);

/// URO policies of both agents for every goal of an instance.
struct PolicySet {
  std::vector<StochasticPolicy> worker;
  std::vector<StochasticPolicy> fetcher;

  static PolicySet build(const DomainInstance& instance);
};

}  // namespace adhoc

#endif  // ADHOC_POLICY_HPP
