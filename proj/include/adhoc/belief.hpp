#ifndef ADHOC_BELIEF_HPP
#define ADHOC_BELIEF_HPP

#include <span>
#include <string>
#include <vector>

#include "adhoc/domain.hpp"
#include "adhoc/policy.hpp"

namespace adhoc {

/// Probability vector over the worker's candidate goals. Immutable; every
/// update returns a new value.
class Belief {
 public:
  /// Normalizes `weights`; throws InputError when they are negative, not
  /// finite, or all zero.
  explicit Belief(std::vector<double> weights);

  static Belief point_mass(int num_goals, int goal);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t g) const { return probs_.at(g); }
  std::span<const double> probabilities() const { return probs_; }
  const std::vector<int>& support() const { return support_; }
  bool in_support(int g) const { return g >= 0 && g < static_cast<int>(size()) && probs_[g] > 0.0; }
  bool is_point_mass() const { return support_.size() == 1; }

  friend bool operator==(const Belief&, const Belief&) = default;

 private:
  std::vector<double> probs_;
  std::vector<int> support_;
};

enum class PriorKind { Uniform, BoltzmannDistance, BoltzmannNegativeDistance };

std::string to_string(PriorKind kind);
PriorKind parse_prior_kind(const std::string& s);

struct GoalPrior {
  PriorKind kind = PriorKind::Uniform;
  double temperature = 1.0;  // in grid steps
};

/// Initial belief over stations from the worker's start:
///  Uniform                    1/|G|
///  BoltzmannDistance          ∝ exp(+d/τ)   (farther goals likelier)
///  BoltzmannNegativeDistance  ∝ exp(-d/τ)   (closer goals likelier)
Belief prior(const DomainInstance& instance, const GoalPrior& prior);

/// Zeroes every goal whose worker URO policy gives `action` no probability
/// at `worker_pos`. Throws InconsistentObservationError if nothing survives.
Belief observe_action(const Belief& belief, const DomainInstance& instance, const PolicySet& policies,
                      Coord worker_pos, const OnticAction& action);

/// Truthful answer to "is your goal one of `query`?". Throws
/// InconsistentObservationError if the answer contradicts the whole support.
Belief observe_response(const Belief& belief, std::span<const int> query, bool yes);

}  // namespace adhoc

#endif  // ADHOC_BELIEF_HPP
