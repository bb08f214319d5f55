#ifndef ADHOC_OPTIM_HPP
#define ADHOC_OPTIM_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace adhoc {

/// One flag per goal; 1 means the goal is named in the query.
using BitVector = std::vector<std::uint8_t>;

struct GaConfig {
  std::size_t population = 50;
  std::size_t generations = 100;
  std::size_t tournament_size = 3;
  double mutation_rate = 0.001;
  std::uint64_t seed = 0;
};

void validate(const GaConfig& config);

struct GaResult {
  BitVector best;
  double fitness = 0.0;
  std::size_t evaluations = 0;
};

using Fitness = std::function<double(const BitVector&)>;

/// Generational GA: tournament selection, single-point crossover, per-bit
/// mutation. The initial population holds every single-bit vector (up to the
/// population size) and random members of varying density. Returns the best member seen in any generation (earliest wins
/// ties). Fitness calls within a generation run in parallel, so `fitness`
/// must be safe to call concurrently. Deterministic for a fixed seed.
GaResult ga_optimize(const Fitness& fitness, std::size_t n_bits, const GaConfig& config);

/// Single-threaded reference for ga_optimize; identical results.
GaResult ga_optimize_serial(const Fitness& fitness, std::size_t n_bits, const GaConfig& config);

using GoalPair = std::pair<int, int>;

struct ObjectiveSolution {
  BitVector x;
  double objective = 0.0;
};

/// sum_{(i,j) in pairs} (x_i xor x_j) * (P_i + P_j) - sc * sum_i x_i
double query_objective(const BitVector& x, const std::vector<GoalPair>& pairs,
                       const std::vector<double>& probabilities, double station_cost);

/// Maximizes query_objective over x in {0,1}^|probabilities|. Goals outside
/// every pair are left at 0. Exact (branch and bound) when at most
/// `kExactObjectiveLimit` goals appear in pairs, otherwise 1-flip local search
/// with random restarts. Ties go to fewer set bits, then to the
/// lexicographically smallest vector.
ObjectiveSolution solve_query_objective(const std::vector<GoalPair>& pairs,
                                        const std::vector<double>& probabilities,
                                        double station_cost, std::uint64_t seed = 0);

inline constexpr std::size_t kExactObjectiveLimit = 15;
inline constexpr std::size_t kLocalSearchRestarts = 16;

/// Local search used above the exact limit; exposed for testing.
ObjectiveSolution local_search_query_objective(const std::vector<GoalPair>& pairs,
                                               const std::vector<double>& probabilities,
                                               double station_cost, std::uint64_t seed,
                                               std::size_t restarts = kLocalSearchRestarts);

/// Tie-aware comparison used by both solvers: true when (a_obj, a) beats (b_obj, b).
bool better_solution(double a_obj, const BitVector& a, double b_obj, const BitVector& b);

}  // namespace adhoc

#endif  // ADHOC_OPTIM_HPP
