// SPDX-License-Identifier: Apache-2.0
#include "curlspec/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "curlspec/error.hpp"
#include "curlspec/massmat.hpp"
#include "curlspec/parallel.hpp"
#include "curlspec/solver2d.hpp"
#include "curlspec/solver3d.hpp"

namespace curlspec::bench {
namespace {

void fill(std::span<double> v, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double& x : v) x = u(rng);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double max_rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    scale = std::max(scale, std::abs(a[i]));
  }
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace

Index dofs(int dim, Index N) {
  require(dim == 2 || dim == 3, ErrorCode::invalid_argument, "dim must be 2 or 3");
  const Index n = N - 1;
  return dim == 2 ? 3 * n * n + 2 * n : 4 * n * n * n + 3 * n * n;
}

std::string strategy_name(const MatmulStrategy& s) {
  return s.kind == MatmulStrategy::Kind::strassen ? "strassen" : "classical";
}

SourceData2D random_source_2d(Index N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SourceData2D s = SourceData2D::zeros(N);
  fill(s.F.values(), rng);
  fill(s.G.values(), rng);
  fill(s.R.values(), rng);
  return s;
}

SourceData3D random_source_3d(Index N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SourceData3D s = SourceData3D::zeros(N);
  fill(s.F.values(), rng);
  fill(s.G.values(), rng);
  fill(s.H.values(), rng);
  fill(s.R.values(), rng);
  return s;
}

std::vector<BenchRow> run_bench(int dim, std::span<const Index> Ns, double kappa,
                                const MatmulStrategy& strategy, int repeats, std::uint64_t seed) {
  require(dim == 2 || dim == 3, ErrorCode::invalid_argument, "dim must be 2 or 3");
  require(repeats >= 3, ErrorCode::invalid_argument, "repeats must be at least 3");
  require(std::is_sorted(Ns.begin(), Ns.end()), ErrorCode::invalid_argument,
          "N list must be ascending");
  const SolveOptions opts{strategy};
  std::vector<BenchRow> rows;
  for (Index N : Ns) {
    const MassDecomp dec = decompose_mass(build_mass_matrix(N));
    std::vector<double> times;
    for (int r = 0; r <= repeats; ++r) {
      double t = 0.0;
      if (dim == 2) {
        const SourceData2D src = random_source_2d(N, seed);
        const auto t0 = std::chrono::steady_clock::now();
        const Solve2DResult res = solve_source_2d(src, kappa, dec, opts);
        t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      } else {
        SourceData3D src = random_source_3d(N, seed);
        const auto t0 = std::chrono::steady_clock::now();
        const Solve3DResult res = solve_source_3d(std::move(src), kappa, dec, opts);
        t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      }
      if (r > 0) times.push_back(t);
    }
    rows.push_back({N, dofs(dim, N), strategy_name(strategy), num_threads(), median(times)});
  }
  return rows;
}

double fit_slope(std::span<const double> N, std::span<const double> t) {
  require(N.size() == t.size(), ErrorCode::length_mismatch, "fit_slope: length mismatch");
  if (N.size() < 3) raise(ErrorCode::insufficient_data, "fit_slope needs at least 3 rows");
  const double n = static_cast<double>(N.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < N.size(); ++i) {
    const double x = std::log(N[i]), y = std::log(t[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double fit_slope(std::span<const BenchRow> rows) {
  std::vector<double> N, t;
  for (const BenchRow& r : rows) {
    N.push_back(static_cast<double>(r.N));
    t.push_back(r.time_s_median);
  }
  return fit_slope(N, t);
}

std::string to_csv(std::span<const BenchRow> rows) {
  std::ostringstream os;
  os.precision(9);
  os << "N,dofs,strategy,threads,time_s_median\n";
  for (const BenchRow& r : rows)
    os << r.N << ',' << r.dofs << ',' << r.strategy << ',' << r.threads << ',' << r.time_s_median
       << '\n';
  return os.str();
}

double compare_strategies(int dim, Index N, double kappa, const MatmulStrategy& alt,
                          std::uint64_t seed) {
  require(dim == 2 || dim == 3, ErrorCode::invalid_argument, "dim must be 2 or 3");
  const MassDecomp dec = decompose_mass(build_mass_matrix(N));
  if (dim == 2) {
    const SourceData2D src = random_source_2d(N, seed);
    const auto a = solve_source_2d(src, kappa, dec, {MatmulStrategy::classical()});
    const auto b = solve_source_2d(src, kappa, dec, {alt});
    return max_rel_diff(stack(a.field), stack(b.field));
  }
  const SourceData3D src = random_source_3d(N, seed);
  const auto a = solve_source_3d(src, kappa, dec, {MatmulStrategy::classical()});
  const auto b = solve_source_3d(src, kappa, dec, {alt});
  return max_rel_diff(stack(a.field), stack(b.field));
}

}  // namespace curlspec::bench
