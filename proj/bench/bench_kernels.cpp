// Serial reference vs OpenMP replication kernels.
//
//   ./build/bench/qamc_bench --benchmark_counters_tabular=true

#include <benchmark/benchmark.h>
#include <omp.h>

#include <vector>

#include "qamc/kernels.hpp"

namespace {

using qamc::CauchyParams;
using qamc::Complex;
using qamc::EstimatorKind;
using qamc::kernels::ReplicationBatch;

ReplicationBatch make_batch(EstimatorKind kind, Complex alpha, std::size_t n) {
  return ReplicationBatch{CauchyParams(0.0, 1.0), {kind, alpha}, n, 4096, 7};
}

void BM_ReplicateSerial(benchmark::State& state) {
  const auto batch = make_batch(static_cast<EstimatorKind>(state.range(0)),
                                state.range(0) == 0 ? Complex(0, 0) : Complex(0, 1),
                                static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    auto out = qamc::kernels::replicate_serial(batch);
    benchmark::DoNotOptimize(out.estimates.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(batch.replications));
}

void BM_ReplicateOpenMP(benchmark::State& state) {
  const auto batch = make_batch(static_cast<EstimatorKind>(state.range(0)),
                                state.range(0) == 0 ? Complex(0, 0) : Complex(0, 1),
                                static_cast<std::size_t>(state.range(1)));
  const int workers = omp_get_max_threads();
  for (auto _ : state) {
    auto out = qamc::kernels::replicate(batch, workers);
    benchmark::DoNotOptimize(out.estimates.data());
  }
  state.counters["workers"] = workers;
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(batch.replications));
}

void BM_AlphaScanSerial(benchmark::State& state) {
  std::vector<Complex> grid;
  for (int k = 1; k <= 25; ++k) grid.emplace_back(0.1 * (k - 13), 0.2 * k);
  for (auto _ : state) {
    auto out = qamc::kernels::mobius_alpha_moments_serial(CauchyParams(0.0, 1.0), grid, 100, 512, 3);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_AlphaScanOpenMP(benchmark::State& state) {
  std::vector<Complex> grid;
  for (int k = 1; k <= 25; ++k) grid.emplace_back(0.1 * (k - 13), 0.2 * k);
  const int workers = omp_get_max_threads();
  for (auto _ : state) {
    auto out = qamc::kernels::mobius_alpha_moments(CauchyParams(0.0, 1.0), grid, 100, 512, 3, workers);
    benchmark::DoNotOptimize(out.data());
  }
  state.counters["workers"] = workers;
}

// range(0): 0 = geometric, 1 = mobius; range(1): sample size n.
BENCHMARK(BM_ReplicateSerial)->Args({0, 100})->Args({1, 100})->Args({0, 1000})->Args({1, 1000});
BENCHMARK(BM_ReplicateOpenMP)->Args({0, 100})->Args({1, 100})->Args({0, 1000})->Args({1, 1000});
BENCHMARK(BM_AlphaScanSerial);
BENCHMARK(BM_AlphaScanOpenMP);

}  // namespace

BENCHMARK_MAIN();
