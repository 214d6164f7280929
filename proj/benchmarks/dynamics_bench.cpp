#include <benchmark/benchmark.h>

#include "kcompound/dynamics.hpp"
#include "kcompound/systems.hpp"

namespace {

void BM_TransitionMatrixExample5(benchmark::State& state) {
  const kcompound::SystemDef sys = kcompound::example5_system();
  const double step = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kcompound::transition_matrix(sys, {0.0, 2.0}, step));
}

void BM_ThomasTrajectory(benchmark::State& state) {
  const kcompound::SystemDef sys = kcompound::thomas_system(0.1);
  const kcompound::Vector x0{1.0, -2.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(kcompound::integrate_final(sys, x0, {0.0, 100.0}, 1e-2));
}

}  // namespace

BENCHMARK(BM_TransitionMatrixExample5)->Arg(100)->Arg(1000);
BENCHMARK(BM_ThomasTrajectory);
