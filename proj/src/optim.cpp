#include "adhoc/optim.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "adhoc/errors.hpp"
#include "adhoc/rng.hpp"

namespace adhoc {

void validate(const GaConfig& config) {
  if (config.population < 2) throw InputError("GA population must be at least 2");
  if (config.tournament_size < 1) throw InputError("GA tournament size must be at least 1");
  if (!(config.mutation_rate >= 0.0 && config.mutation_rate <= 1.0))
    throw InputError("GA mutation rate must lie in [0, 1]");
}

namespace {

template <bool Parallel>
void evaluate(const Fitness& fitness, const std::vector<BitVector>& members, std::vector<double>& out) {
  out.resize(members.size());
  const auto n = static_cast<std::int64_t>(members.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(static) if (Parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[i] = fitness(members[i]);
    } catch (...) {
#pragma omp critical(ga_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

std::size_t tournament(const std::vector<double>& fit, std::size_t k, Rng& rng) {
  std::size_t best = rng.below(fit.size());
  for (std::size_t i = 1; i < k; ++i) {
    const std::size_t c = rng.below(fit.size());
    if (fit[c] > fit[best]) best = c;
  }
  return best;
}

void mutate(BitVector& x, double rate, Rng& rng) {
  if (rate <= 0.0) return;
  for (auto& bit : x)
    if (rng.bernoulli(rate)) bit ^= 1;
}

template <bool Parallel>
GaResult run_ga(const Fitness& fitness, std::size_t n_bits, const GaConfig& config) {
  validate(config);
  if (n_bits == 0) throw InputError("ga_optimize needs at least one bit");
  Rng rng(config.seed);
  const std::size_t pop = config.population;

  // Initial population: every single-bit vector (as many as fit), then
  // random members each drawn at its own bit density.
  std::vector<BitVector> members(pop, BitVector(n_bits));
  for (std::size_t i = 0; i < pop; ++i) {
    if (i < n_bits) {
      members[i][i] = 1;
      continue;
    }
    const double density = rng.uniform01();
    for (auto& bit : members[i]) bit = static_cast<std::uint8_t>(rng.bernoulli(density));
  }
  std::vector<double> fit;
  evaluate<Parallel>(fitness, members, fit);

  GaResult result;
  result.evaluations = pop;
  std::size_t arg = 0;
  for (std::size_t i = 1; i < pop; ++i)
    if (fit[i] > fit[arg]) arg = i;
  result.best = members[arg];
  result.fitness = fit[arg];

  std::vector<BitVector> next;
  next.reserve(pop);
  for (std::size_t gen = 0; gen < config.generations; ++gen) {
    next.clear();
    while (next.size() < pop) {
      const BitVector& a = members[tournament(fit, config.tournament_size, rng)];
      const BitVector& b = members[tournament(fit, config.tournament_size, rng)];
      BitVector c1 = a;
      BitVector c2 = b;
      if (n_bits > 1) {
        const std::size_t cut = 1 + rng.below(n_bits - 1);
        std::copy(b.begin() + cut, b.end(), c1.begin() + cut);
        std::copy(a.begin() + cut, a.end(), c2.begin() + cut);
      }
      mutate(c1, config.mutation_rate, rng);
      mutate(c2, config.mutation_rate, rng);
      next.push_back(std::move(c1));
      if (next.size() < pop) next.push_back(std::move(c2));
    }
    members.swap(next);
    evaluate<Parallel>(fitness, members, fit);
    result.evaluations += pop;
    for (std::size_t i = 0; i < pop; ++i) {
      if (fit[i] > result.fitness) {
        result.fitness = fit[i];
        result.best = members[i];
      }
    }
  }
  return result;
}

constexpr double kTieTolerance = 1e-9;

std::size_t ones(const BitVector& x) { return static_cast<std::size_t>(std::count(x.begin(), x.end(), 1)); }

// Objective restricted to goals that appear in at least one pair.
struct ReducedProblem {
  std::vector<int> active;  // reduced index -> goal
  struct Edge {
    std::size_t a;
    std::size_t b;
    double w;
  };
  std::vector<Edge> edges;
};

ReducedProblem reduce(const std::vector<GoalPair>& pairs, const std::vector<double>& probabilities) {
  const int n = static_cast<int>(probabilities.size());
  std::vector<int> index(n, -1);
  for (const auto& [i, j] : pairs) {
    if (i < 0 || j < 0 || i >= n || j >= n) throw InputError("goal pair outside the probability vector");
    if (i == j) continue;
    index[i] = index[j] = 0;
  }
  ReducedProblem r;
  for (int g = 0; g < n; ++g)
    if (index[g] == 0) {
      index[g] = static_cast<int>(r.active.size());
      r.active.push_back(g);
    }
  for (const auto& [i, j] : pairs) {
    if (i == j) continue;
    r.edges.push_back({static_cast<std::size_t>(index[i]), static_cast<std::size_t>(index[j]),
                       probabilities[i] + probabilities[j]});
  }
  return r;
}

double reduced_objective(const ReducedProblem& r, const BitVector& x, double sc) {
  double v = 0.0;
  for (const auto& e : r.edges)
    if (x[e.a] != x[e.b]) v += e.w;
  return v - sc * static_cast<double>(ones(x));
}

ObjectiveSolution expand(const ReducedProblem& r, const BitVector& reduced, std::size_t n,
                         double objective) {
  ObjectiveSolution s{BitVector(n, 0), objective};
  for (std::size_t k = 0; k < reduced.size(); ++k) s.x[r.active[k]] = reduced[k];
  return s;
}

class BranchAndBound {
 public:
  BranchAndBound(const ReducedProblem& r, double sc) : r_(r), sc_(sc), m_(r.active.size()) {
    closing_.resize(m_);
    remaining_.assign(m_ + 1, 0.0);
    for (const auto& e : r_.edges) {
      const std::size_t last = std::max(e.a, e.b);
      closing_[last].push_back(&e);
      for (std::size_t d = 0; d <= last; ++d) remaining_[d] += e.w;
    }
    x_.assign(m_, 0);
    best_x_.assign(m_, 0);
    best_obj_ = reduced_objective(r_, best_x_, sc_);
  }

  std::pair<BitVector, double> solve() {
    visit(0, 0.0);
    return {best_x_, best_obj_};
  }

 private:
  void visit(std::size_t depth, double value) {
    if (depth == m_) {
      if (better_solution(value, x_, best_obj_, best_x_)) {
        best_obj_ = value;
        best_x_ = x_;
      }
      return;
    }
    if (value + remaining_[depth] < best_obj_ - kTieTolerance) return;
    for (std::uint8_t bit = 0; bit <= 1; ++bit) {
      x_[depth] = bit;
      double v = value - (bit ? sc_ : 0.0);
      for (const auto* e : closing_[depth])
        if (x_[e->a] != x_[e->b]) v += e->w;
      visit(depth + 1, v);
    }
    x_[depth] = 0;
  }

  const ReducedProblem& r_;
  double sc_;
  std::size_t m_;
  std::vector<std::vector<const ReducedProblem::Edge*>> closing_;
  std::vector<double> remaining_;
  BitVector x_;
  BitVector best_x_;
  double best_obj_ = 0.0;
};

std::pair<BitVector, double> hill_climb(const ReducedProblem& r, double sc, BitVector x) {
  double obj = reduced_objective(r, x, sc);
  while (true) {
    BitVector best_x = x;
    double best = obj;
    for (std::size_t k = 0; k < x.size(); ++k) {
      BitVector y = x;
      y[k] ^= 1;
      const double v = reduced_objective(r, y, sc);
      if (better_solution(v, y, best, best_x)) {
        best = v;
        best_x = std::move(y);
      }
    }
    if (best_x == x) return {x, obj};
    x = std::move(best_x);
    obj = best;
  }
}

}  // namespace

GaResult ga_optimize(const Fitness& fitness, std::size_t n_bits, const GaConfig& config) {
  return run_ga<true>(fitness, n_bits, config);
}

GaResult ga_optimize_serial(const Fitness& fitness, std::size_t n_bits, const GaConfig& config) {
  return run_ga<false>(fitness, n_bits, config);
}

bool better_solution(double a_obj, const BitVector& a, double b_obj, const BitVector& b) {
  if (a_obj > b_obj + kTieTolerance) return true;
  if (a_obj < b_obj - kTieTolerance) return false;
  const std::size_t na = ones(a), nb = ones(b);
  if (na != nb) return na < nb;
  return a < b;
}

double query_objective(const BitVector& x, const std::vector<GoalPair>& pairs,
                       const std::vector<double>& probabilities, double station_cost) {
  if (x.size() != probabilities.size()) throw InputError("bit vector and probabilities differ in length");
  double v = 0.0;
  for (const auto& [i, j] : pairs)
    if (x.at(i) != x.at(j)) v += probabilities[i] + probabilities[j];
  return v - station_cost * static_cast<double>(ones(x));
}

ObjectiveSolution solve_query_objective(const std::vector<GoalPair>& pairs,
                                        const std::vector<double>& probabilities,
                                        double station_cost, std::uint64_t seed) {
  if (!(station_cost >= 0.0)) throw InputError("station cost must be >= 0");
  const ReducedProblem r = reduce(pairs, probabilities);
  if (r.active.size() > kExactObjectiveLimit)
    return local_search_query_objective(pairs, probabilities, station_cost, seed);
  auto [x, obj] = BranchAndBound(r, station_cost).solve();
  return expand(r, x, probabilities.size(), obj);
}

ObjectiveSolution local_search_query_objective(const std::vector<GoalPair>& pairs,
                                               const std::vector<double>& probabilities,
                                               double station_cost, std::uint64_t seed,
                                               std::size_t restarts) {
  const ReducedProblem r = reduce(pairs, probabilities);
  const std::size_t m = r.active.size();
  Rng rng(seed);
  auto [best_x, best] = hill_climb(r, station_cost, BitVector(m, 0));
  for (std::size_t k = 0; k < restarts; ++k) {
    BitVector start(m);
    for (auto& bit : start) bit = static_cast<std::uint8_t>(rng.below(2));
    auto [x, v] = hill_climb(r, station_cost, std::move(start));
    if (better_solution(v, x, best, best_x)) {
      best = v;
      best_x = std::move(x);
    }
  }
  return expand(r, best_x, probabilities.size(), best);
}

}  // namespace adhoc
