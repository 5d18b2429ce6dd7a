#include <benchmark/benchmark.h>

#include "mzi/bounds.hpp"
#include "mzi/fock.hpp"
#include "mzi/moments.hpp"
#include "mzi/optimize.hpp"
#include "mzi/sensitivity.hpp"

namespace {

using namespace mzi;

void BM_JointMoments(benchmark::State& state) {
  const InputParams p(3, 1.2, kPi, 0.3, 0.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(joint_moments(p));
  }
}
BENCHMARK(BM_JointMoments);

void BM_PhaseSensitivity(benchmark::State& state) {
  const InputParams p(3, 1.2, kPi, 0.3, 0.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(phase_sensitivity(Scheme::Hd, p, 1.1));
  }
}
BENCHMARK(BM_PhaseSensitivity);

void BM_Qfi(benchmark::State& state) {
  const InputParams p(3, 1.2, kPi, 0.3, 0.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qfi(p));
  }
}
BENCHMARK(BM_Qfi);

void BM_OptimizePhase(benchmark::State& state) {
  const InputParams p(3, 1.2, kPi, 0.3, 0.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_phase(Scheme::Idd, p));
  }
}
BENCHMARK(BM_OptimizePhase);

void BM_BuildSksState(benchmark::State& state) {
  const InputParams p(0, double(state.range(0)), kPi, 0.3, 0.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_sks_state(p));
  }
}
BENCHMARK(BM_BuildSksState)->Arg(1)->Arg(2)->Arg(3);

void BM_OracleSensitivity(benchmark::State& state) {
  const InputParams p(2, 1, kPi, 0.2, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle_sensitivity(
        Scheme::Idd, p, 1.2, Convention::WithGlobalPhase));
  }
}
BENCHMARK(BM_OracleSensitivity);

void BM_OracleQfi(benchmark::State& state) {
  const InputParams p(2, 1, kPi, 0.2, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle_qfi(p));
  }
}
BENCHMARK(BM_OracleQfi);

}  // namespace

BENCHMARK_MAIN();
