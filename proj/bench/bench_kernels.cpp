// Throughput of the OpenMP kernels against the serial reference, across
// sizes that straddle the parallel cutoff. Run manually:
//   ./build/bench/bench_kernels

#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "csvortex/energy.hpp"
#include "csvortex/grid.hpp"
#include "csvortex/kernels.hpp"
#include "csvortex/reference.hpp"
#include "csvortex/rng.hpp"

namespace {

using namespace csvortex;

struct Setup {
  std::shared_ptr<const RadialGrid> grid;
  std::vector<double> u;
  std::vector<double> scratch;

  explicit Setup(int cells) {
    grid = std::make_shared<const RadialGrid>(make_grid(40.0, cells));
    Rng rng(99);
    u.resize(grid->num_nodes());
    for (auto& v : u) v = rng.uniform(-1.0, 1.0);
    u[0] = 0.0;
    scratch.resize(u.size());
  }
};

void BM_trapezoid_ref(benchmark::State& state) {
  Setup s(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(refimpl::trapezoid(s.grid->weights, s.u));
  }
}

void BM_trapezoid_omp(benchmark::State& state) {
  Setup s(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::trapezoid(s.grid->weights, s.u));
  }
}

void BM_cumtrap_ref(benchmark::State& state) {
  Setup s(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    refimpl::cumtrap(s.grid->nodes, s.u, s.scratch);
    benchmark::DoNotOptimize(s.scratch.data());
  }
}

void BM_cumtrap_omp(benchmark::State& state) {
  Setup s(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    kernels::cumtrap(s.grid->nodes, s.u, s.scratch);
    benchmark::DoNotOptimize(s.scratch.data());
  }
}

void BM_energy_ref(benchmark::State& state) {
  Setup s(static_cast<int>(state.range(0)));
  Params params{2.0, 0.12, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(refimpl::energy(*s.grid, s.u, params));
  }
}

void BM_energy_omp(benchmark::State& state) {
  Setup s(static_cast<int>(state.range(0)));
  Params params{2.0, 0.12, 1};
  EnergyEvaluator ev(s.grid, params);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev.evaluate(s.u));
  }
}

void BM_gradient_omp(benchmark::State& state) {
  Setup s(static_cast<int>(state.range(0)));
  Params params{2.0, 0.12, 1};
  EnergyEvaluator ev(s.grid, params);
  for (auto _ : state) {
    ev.gradient(s.u, s.scratch);
    benchmark::DoNotOptimize(s.scratch.data());
  }
}

}  // namespace

BENCHMARK(BM_trapezoid_ref)->Arg(1 << 12)->Arg(1 << 17)->Arg(1 << 21);
BENCHMARK(BM_trapezoid_omp)->Arg(1 << 12)->Arg(1 << 17)->Arg(1 << 21);
BENCHMARK(BM_cumtrap_ref)->Arg(1 << 12)->Arg(1 << 17)->Arg(1 << 21);
BENCHMARK(BM_cumtrap_omp)->Arg(1 << 12)->Arg(1 << 17)->Arg(1 << 21);
BENCHMARK(BM_energy_ref)->Arg(1 << 12)->Arg(1 << 17)->Arg(1 << 21);
BENCHMARK(BM_energy_omp)->Arg(1 << 12)->Arg(1 << 17)->Arg(1 << 21);
BENCHMARK(BM_gradient_omp)->Arg(1 << 12)->Arg(1 << 17)->Arg(1 << 21);

BENCHMARK_MAIN();
