// Serial references against the OpenMP kernels on desk and full sized grids.

#include <benchmark/benchmark.h>

#include "adhoc/bench/config.hpp"
#include "adhoc/bench/instance_gen.hpp"
#include "adhoc/edp.hpp"
#include "adhoc/optim.hpp"
#include "adhoc/zones.hpp"

using namespace adhoc;

namespace {

DomainInstance instance(int side, int stations, int toolboxes) {
  bench::SweepConfig c;
  c.width = c.height = side;
  c.stations = stations;
  c.toolboxes = toolboxes;
  return bench::generate_instance(c, 17);
}

template <bool Parallel>
void BM_EdpEvaluation(benchmark::State& state) {
  const auto inst = instance(static_cast<int>(state.range(0)), 2, 1);
  const auto ps = PolicySet::build(inst);
  for (auto _ : state) {
    auto t = Parallel ? edp_policy_evaluation(ps.worker[0], ps.worker[1])
                      : edp_policy_evaluation_serial(ps.worker[0], ps.worker[1]);
    benchmark::DoNotOptimize(t);
  }
}

template <bool Parallel>
void BM_ZoneTables(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto inst = instance(side, side, side / 4);
  const auto ps = PolicySet::build(inst);
  for (auto _ : state) {
    auto z = Parallel ? ZoneTables::build(inst, ps) : ZoneTables::build_serial(inst, ps);
    benchmark::DoNotOptimize(z);
  }
}

// Max-cut style fitness, close in cost to the query value.
double cut_fitness(const BitVector& x) {
  double v = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (x[i] != x[j]) v += 1.0 / static_cast<double>(1 + i + j);
  return v;
}

template <bool Parallel>
void BM_Ga(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  GaConfig config;
  for (auto _ : state) {
    auto r = Parallel ? ga_optimize(cut_fitness, n, config) : ga_optimize_serial(cut_fitness, n, config);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK(BM_EdpEvaluation<false>)->Name("edp/serial")->Arg(10)->Arg(20)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_EdpEvaluation<true>)->Name("edp/openmp")->Arg(10)->Arg(20)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ZoneTables<false>)->Name("zones/serial")->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ZoneTables<true>)->Name("zones/openmp")->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Ga<false>)->Name("ga/serial")->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Ga<true>)->Name("ga/openmp")->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
