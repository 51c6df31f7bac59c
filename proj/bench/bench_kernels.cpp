// OpenMP kernels against their serial reference loops.
#include <benchmark/benchmark.h>

#include "specdpp/analysis.hpp"
#include "specdpp/kernel.hpp"
#include "specdpp/parallel.hpp"
#include "specdpp/sampler.hpp"

namespace {

using namespace specdpp;

void BM_SampleReplicas(benchmark::State& state) {
  const SpectralBasis basis(ManifoldModel::sphere2(), 10.0);
  const ProjectionSampler sampler(basis);
  const bool parallel = state.range(0) != 0;
  for (auto _ : state) {
    auto out = parallel ? sample_replicas(sampler, 1, 32) : sample_replicas_serial(sampler, 1, 32);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetLabel(parallel ? "openmp" : "serial");
}
BENCHMARK(BM_SampleReplicas)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TabulateScaled(benchmark::State& state) {
  const auto model = ManifoldModel::sphere2();
  const double lambda = static_cast<double>(state.range(1));
  const SpectralBasis basis(model, lambda);
  const TangentChart chart(model, default_base_point(model), 1.0, lambda);
  const auto grid = chart_grid(2, 4.0, 1.0);
  const bool parallel = state.range(0) != 0;
  for (auto _ : state) {
    auto t = parallel ? tabulate(ScaledKernel{&basis, &chart}, grid, grid)
                      : tabulate_serial(ScaledKernel{&basis, &chart}, grid, grid);
    benchmark::DoNotOptimize(t.values.data());
  }
  state.SetLabel(parallel ? "openmp" : "serial");
}
BENCHMARK(BM_TabulateScaled)->Args({0, 40})->Args({1, 40})->Args({0, 160})->Args({1, 160})
    ->Unit(benchmark::kMillisecond);

void BM_TabulateUniversal(benchmark::State& state) {
  const auto grid = chart_grid(2, 4.0, 0.25);
  const bool parallel = state.range(0) != 0;
  for (auto _ : state) {
    auto t = parallel ? tabulate(UniversalKernel{2}, grid, grid)
                      : tabulate_serial(UniversalKernel{2}, grid, grid);
    benchmark::DoNotOptimize(t.values.data());
  }
  state.SetLabel(parallel ? "openmp" : "serial");
}
BENCHMARK(BM_TabulateUniversal)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
