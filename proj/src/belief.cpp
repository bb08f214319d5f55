#include "adhoc/belief.hpp"

#include <algorithm>
#include <cmath>

#include "adhoc/errors.hpp"

namespace adhoc {

Belief::Belief(std::vector<double> weights) : probs_(std::move(weights)) {
  double total = 0.0;
  for (double w : probs_) {
    if (!std::isfinite(w) || w < 0.0) throw InputError("belief weights must be finite and >= 0");
    total += w;
  }
  if (!(total > 0.0)) throw InputError("belief needs a nonempty support");
  for (std::size_t g = 0; g < probs_.size(); ++g) {
    probs_[g] /= total;
    if (probs_[g] > 0.0) support_.push_back(static_cast<int>(g));
  }
}

Belief Belief::point_mass(int num_goals, int goal) {
  if (goal < 0 || goal >= num_goals) throw InputError("point mass outside the goal set");
  std::vector<double> w(num_goals, 0.0);
  w[goal] = 1.0;
  return Belief(std::move(w));
}

std::string to_string(PriorKind kind) {
  switch (kind) {
    case PriorKind::Uniform: return "uniform";
    case PriorKind::BoltzmannDistance: return "boltzmann_distance";
    case PriorKind::BoltzmannNegativeDistance: return "boltzmann_negative_distance";
  }
  return "?";
}

PriorKind parse_prior_kind(const std::string& s) {
  if (s == "uniform") return PriorKind::Uniform;
  if (s == "boltzmann_distance") return PriorKind::BoltzmannDistance;
  if (s == "boltzmann_negative_distance") return PriorKind::BoltzmannNegativeDistance;
  throw InputError("unknown prior kind '" + s + "'");
}

Belief prior(const DomainInstance& instance, const GoalPrior& prior) {
  if (!(prior.temperature > 0.0)) throw InputError("prior temperature must be positive");
  const int n = instance.num_stations();
  if (prior.kind == PriorKind::Uniform) return Belief(std::vector<double>(n, 1.0));

  const double sign = prior.kind == PriorKind::BoltzmannDistance ? 1.0 : -1.0;
  std::vector<double> logits(n);
  for (int g = 0; g < n; ++g)
    logits[g] = sign * shortest_distance(instance, instance.worker_start(), instance.station(g)) /
                prior.temperature;
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> w(n);
  for (int g = 0; g < n; ++g) w[g] = std::exp(logits[g] - top);
  return Belief(std::move(w));
}

Belief observe_action(const Belief& belief, const DomainInstance& instance, const PolicySet& policies,
                      Coord worker_pos, const OnticAction& action) {
  const auto state = static_cast<std::size_t>(instance.worker_state(worker_pos));
  std::vector<double> w(belief.probabilities().begin(), belief.probabilities().end());
  bool any = false;
  for (int g : belief.support()) {
    if (policies.worker.at(g).prob(state, action) == 0.0)
      w[g] = 0.0;
    else
      any = true;
  }
  if (!any)
    throw InconsistentObservationError("worker action " + to_string(action) + " at " +
                                       to_string(worker_pos) + " is not optimal for any goal");
  return Belief(std::move(w));
}

Belief observe_response(const Belief& belief, std::span<const int> query, bool yes) {
  std::vector<double> w(belief.probabilities().begin(), belief.probabilities().end());
  std::vector<bool> asked(w.size(), false);
  for (int g : query) {
    if (g < 0 || g >= static_cast<int>(w.size())) throw InputError("query names an unknown station");
    asked[g] = true;
  }
  bool any = false;
  for (int g : belief.support()) {
    if (asked[g] != yes)
      w[g] = 0.0;
    else
      any = true;
  }
  if (!any) throw InconsistentObservationError("query response contradicts every candidate goal");
  return Belief(std::move(w));
}

}  // namespace adhoc
