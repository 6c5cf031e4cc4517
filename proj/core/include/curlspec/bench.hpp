// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "curlspec/fields.hpp"
#include "curlspec/tensorops.hpp"

namespace curlspec::bench {

struct BenchRow {
  Index N = 0;
  Index dofs = 0;
  std::string strategy;
  int threads = 1;
  double time_s_median = 0.0;
};

/// 3(N−1)² + 2(N−1) in 2D, 4(N−1)³ + 3(N−1)² in 3D.
Index dofs(int dim, Index N);

std::string strategy_name(const MatmulStrategy& s);

/// Uniform random entries in (−1, 1) from a fixed seed.
SourceData2D random_source_2d(Index N, std::uint64_t seed);
SourceData3D random_source_3d(Index N, std::uint64_t seed);

/// Median solve wall time per N after one discarded warm-up run. The mass
/// decomposition is built once per N outside the timed region.
std::vector<BenchRow> run_bench(int dim, std::span<const Index> Ns, double kappa,
                                const MatmulStrategy& strategy, int repeats = 3,
                                std::uint64_t seed = 20240601);

/// Least-squares slope of log(time) against log(N).
double fit_slope(std::span<const BenchRow> rows);
double fit_slope(std::span<const double> N, std::span<const double> t);

std::string to_csv(std::span<const BenchRow> rows);

/// Max relative difference between the classical solve and one using `alt`.
double compare_strategies(int dim, Index N, double kappa, const MatmulStrategy& alt,
                          std::uint64_t seed = 7);

}  // namespace curlspec::bench
