// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "curlspec/bench.hpp"
#include "curlspec/oracle.hpp"
#include "curlspec/solver2d.hpp"
#include "curlspec/varcoef.hpp"
#include "galerkin.hpp"
#include "support.hpp"

using namespace curlspec;

namespace {

std::vector<double> random_vector(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> x(static_cast<std::size_t>(n));
  for (double& v : x) v = u(rng);
  return x;
}

double poly_alpha(const Point& x) { return 2.0 + x[0] + 0.5 * x[1] * x[1]; }

}  // namespace

TEST(VarCoefOperator, UnitCoefficientMatchesDenseSystem) {
  for (Index N : {3, 6, 9}) {
    const double kappa = -3.5;
    const VarCoefOperator op([](const Point&) { return 1.0; }, N, kappa);
    EXPECT_EQ(op.size(), stacked_size_2d(N));
    EXPECT_NEAR(op.mean_alpha(), 1.0, 1e-15);
    const oracle::DensePencil p = oracle::assemble_dense_2d(kappa, N);
    const std::vector<double> x = random_vector(op.size(), N);
    EXPECT_LT(testing_support::rel_diff(op.apply(x), oracle::apply(p.A, x)), 1e-13);
  }
}

TEST(VarCoefOperator, MatchesBruteForceWithPolynomialCoefficient) {
  const Index N = 5;
  const double kappa = 4.0;
  const VarCoefOperator op(poly_alpha, N, kappa);
  const DenseMatrix ref =
      testing_support::brute_force_galerkin(2, N, N + 4, [](const std::array<double, 3>& x) {
        return poly_alpha({x[0], x[1], 0.0});
      }).full(kappa);
  std::vector<double> e(static_cast<std::size_t>(op.size()), 0.0);
  double worst = 0;
  for (Index c = 0; c < op.size(); ++c) {
    e[c] = 1.0;
    const std::vector<double> col = op.apply(e);
    e[c] = 0.0;
    for (Index r = 0; r < op.size(); ++r) worst = std::max(worst, std::abs(col[r] - ref(r, c)));
  }
  EXPECT_LT(worst, 1e-13);
  EXPECT_NEAR(op.mean_alpha(), 2.0 + 0.5 / 3.0, 1e-14);
}

TEST(VarCoefOperator, LinearInCoefficientAndSymmetric) {
  const Index N = 7;
  auto a1 = [](const Point& x) { return 1.0 + std::exp(x[0] * x[1]); };
  auto a2 = [](const Point& x) { return 2.0 + std::sin(3 * x[0]); };
  auto a3 = [](const Point& x) { return 1.5 + x[1] * x[1]; };
  auto sum = [](auto f, auto g) { return [f, g](const Point& x) { return f(x) + g(x); }; };
  const std::vector<double> x = random_vector(stacked_size_2d(N), 3);
  const std::vector<double> y = random_vector(stacked_size_2d(N), 4);
  const VarCoefOperator op12(sum(a1, a2), N, 1.0), op3(a3, N, 1.0), op1(a1, N, 1.0),
      op23(sum(a2, a3), N, 1.0);
  const std::vector<double> l1 = op12.apply(x), l2 = op3.apply(x), r1 = op1.apply(x), r2 = op23.apply(x);
  std::vector<double> lhs(l1.size()), rhs(l1.size());
  for (std::size_t i = 0; i < l1.size(); ++i) {
    lhs[i] = l1[i] + l2[i];
    rhs[i] = r1[i] + r2[i];
  }
  EXPECT_LT(testing_support::rel_diff(lhs, rhs), 1e-13);
  const double xay = testing_support::dot(op12.apply(x), y), yax = testing_support::dot(op12.apply(y), x);
  EXPECT_NEAR(xay, yax, 1e-12 * std::abs(xay));
}

TEST(VarCoefSolve, UnitCoefficientConvergesImmediately) {
  const Index N = 12;
  const double kappa = 10.0;
  const VarCoefOperator op([](const Point&) { return 1.0; }, N, kappa);
  const SourceData2D src = bench::random_source_2d(N, 9);
  const VarCoefResult r = solve_varcoef(op, src);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.iterations, 2);
  EXPECT_EQ(r.residual_history.size(), static_cast<std::size_t>(r.iterations + 1));
  const Solve2DResult fast = solve_source_2d(src, kappa, decompose_mass(build_mass_matrix(N)));
  EXPECT_LT(testing_support::rel_diff(stack(r.field), stack(fast.field)), 1e-10);
}

TEST(VarCoefSolve, VariableCoefficientReachesTolerance) {
  const Index N = 16;
  auto alpha = [](const Point& x) { return 1.0 + 0.5 * std::sin(3 * x[0]) * std::cos(2 * x[1]); };
  const VarCoefOperator op(alpha, N, -20.0);
  const SourceData2D src = bench::random_source_2d(N, 2);
  const VarCoefResult r = solve_varcoef(op, src);
  ASSERT_TRUE(r.converged);
  EXPECT_LE(r.residual_history.back(), 1e-10);
  const std::vector<double> b = stack(src), ax = op.apply(stack(r.field));
  double res = 0, bn = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    res += (ax[i] - b[i]) * (ax[i] - b[i]);
    bn += b[i] * b[i];
  }
  EXPECT_LT(std::sqrt(res / bn), 1e-9);
}

TEST(VarCoefSolve, ReportsNonConvergence) {
  const Index N = 16;
  auto alpha = [](const Point& x) { return 1.0 + 0.9 * std::sin(3 * x[0]) * std::cos(2 * x[1]); };
  const VarCoefOperator op(alpha, N, -20.0);
  KrylovConfig cfg;
  cfg.max_iterations = 1;
  cfg.tolerance = 1e-14;
  const VarCoefResult r = solve_varcoef(op, bench::random_source_2d(N, 5), cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_EQ(r.residual_history.size(), 2u);
  EXPECT_LT(r.residual_history[1], r.residual_history[0]);
}

TEST(Gmres, SolvesDiagonalSystemWithRestarts) {
  const Index n = 30;
  LinearMap a = [n](std::span<const double> x, std::span<double> y) {
    for (Index i = 0; i < n; ++i) y[i] = (1.0 + i) * x[i] + (i > 0 ? 0.1 * x[i - 1] : 0.0);
  };
  LinearMap id = [n](std::span<const double> x, std::span<double> y) {
    for (Index i = 0; i < n; ++i) y[i] = x[i];
  };
  const std::vector<double> b = random_vector(n, 1);
  KrylovConfig cfg;
  cfg.restart = 7;
  cfg.max_iterations = 500;
  cfg.tolerance = 1e-12;
  const GmresResult r = gmres(a, id, b, cfg);
  ASSERT_TRUE(r.converged);
  std::vector<double> ax(b.size());
  a(r.x, ax);
  EXPECT_LT(testing_support::max_abs_diff(ax, b), 1e-10);
  for (std::size_t i = 1; i < r.history.size(); ++i) EXPECT_LE(r.history[i], r.history[i - 1] * (1 + 1e-12));
}
