#include <benchmark/benchmark.h>

#include "bipres/bifiltration.hpp"
#include "bipres/bigraded_reduction.hpp"
#include "bipres/presentation.hpp"

using namespace bipres;

namespace {

FIRep annulus_firep(std::int64_t n, int degree) {
  PointCloud cloud = annulus_sample(n, 1);
  DistanceMatrix dist = euclidean_distances(cloud);
  DensityRipsOptions opts;
  opts.density_radius = 1.0;
  opts.max_dim = degree + 1;
  return build_firep(build_density_rips(dist, opts), degree, PrimeField(2));
}

void bench_kernel_basis(benchmark::State& state, ColumnBackend backend) {
  FIRep fr = annulus_firep(state.range(0), 1);
  SweepOptions opts;
  opts.backend = backend;
  for (auto _ : state) {
    KernelBasis basis = kernel_basis(fr.d1, opts);
    benchmark::DoNotOptimize(basis);
  }
  state.counters["columns"] = double(fr.d1.num_cols());
}

void bench_minimal_generators(benchmark::State& state) {
  FIRep fr = annulus_firep(state.range(0), 1);
  for (auto _ : state) {
    GeneratorSet gens = minimal_generators(fr.d2);
    benchmark::DoNotOptimize(gens);
  }
  state.counters["columns"] = double(fr.d2.num_cols());
}

void bench_pipeline(benchmark::State& state) {
  FIRep fr = annulus_firep(state.range(0), 1);
  PipelineOptions opts;
  opts.minimal = true;
  opts.betti = true;
  for (auto _ : state) {
    PipelineResult result = run_pipeline(fr, opts);
    benchmark::DoNotOptimize(result);
  }
}

void bench_minimize_threads(benchmark::State& state) {
  FIRep fr = annulus_firep(60, 1);
  Presentation semi = semi_minimal_presentation(fr);
  for (auto _ : state) {
    Presentation minimal = minimize(semi, int(state.range(0)));
    benchmark::DoNotOptimize(minimal);
  }
}

}  // namespace

BENCHMARK_CAPTURE(bench_kernel_basis, sorted, ColumnBackend::sorted_list)
    ->Arg(25)
    ->Arg(50)
    ->Arg(100)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_kernel_basis, lazy_heap, ColumnBackend::lazy_heap)
    ->Arg(25)
    ->Arg(50)
    ->Arg(100)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(bench_minimal_generators)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_pipeline)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_minimize_threads)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
