// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <random>

#include "curlspec/bench.hpp"
#include "curlspec/massmat.hpp"
#include "curlspec/solver2d.hpp"
#include "curlspec/solver3d.hpp"
#include "curlspec/tensorops.hpp"

using namespace curlspec;

namespace {

DenseMatrix random_matrix(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseMatrix a(n, n);
  for (double& v : a.values()) v = u(rng);
  return a;
}

void matmul_bench(benchmark::State& state, MatmulStrategy strategy) {
  const Index n = state.range(0);
  const DenseMatrix a = random_matrix(n, 1), b = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(matmul(a, b, strategy));
  state.counters["flops"] =
      benchmark::Counter(2.0 * n * n * n, benchmark::Counter::kIsIterationInvariantRate);
}

void BM_MatmulClassical(benchmark::State& state) { matmul_bench(state, MatmulStrategy::classical()); }
void BM_MatmulStrassen(benchmark::State& state) { matmul_bench(state, MatmulStrategy::strassen(64)); }

void BM_Kron3(benchmark::State& state) {
  const Index n = state.range(0);
  const DenseMatrix a = random_matrix(n, 3);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Tensor3 t(n, n, n);
  for (double& v : t.values()) v = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(kron3_apply(a, a, a, t));
}

void BM_Solve2D(benchmark::State& state) {
  const Index N = state.range(0);
  const MassDecomp dec = decompose_mass(build_mass_matrix(N));
  const SourceData2D src = bench::random_source_2d(N, 5);
  for (auto _ : state) benchmark::DoNotOptimize(solve_source_2d(src, 1.0, dec));
}

void BM_Solve3D(benchmark::State& state) {
  const Index N = state.range(0);
  const MassDecomp dec = decompose_mass(build_mass_matrix(N));
  const SourceData3D src = bench::random_source_3d(N, 6);
  for (auto _ : state) benchmark::DoNotOptimize(solve_source_3d(src, 1.0, dec));
}

void BM_MassDecomposition(benchmark::State& state) {
  const MassMatrix m = build_mass_matrix(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(decompose_mass(m));
}

}  // namespace

BENCHMARK(BM_MatmulClassical)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatmulStrassen)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Kron3)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Solve2D)->RangeMultiplier(2)->Range(64, 1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Solve3D)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MassDecomposition)->RangeMultiplier(4)->Range(64, 1024)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
