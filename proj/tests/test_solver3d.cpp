// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "curlspec/bench.hpp"
#include "curlspec/eigensolve.hpp"
#include "curlspec/error.hpp"
#include "curlspec/oracle.hpp"
#include "curlspec/parallel.hpp"
#include "curlspec/presets.hpp"
#include "curlspec/solver3d.hpp"
#include "support.hpp"

using namespace curlspec;

TEST(Solve3D, ZeroSourceGivesZero) {
  const MassDecomp dec = decompose_mass(build_mass_matrix(5));
  const SourceData3D src = SourceData3D::zeros(5);
  const Solve3DResult r = solve_source_3d(src, 2.0, dec);
  EXPECT_EQ(r.field.U.max_abs() + r.field.V.max_abs() + r.field.W.max_abs(), 0.0);
  ASSERT_TRUE(r.field.P.has_value());
  EXPECT_EQ(r.field.P->max_abs(), 0.0);
  EXPECT_EQ(r.report.gauss_residual, 0.0);
  EXPECT_FALSE(r.report.residual_in_transformed_basis);
}

TEST(Solve3D, RecoversBubbleSolution) {
  // every component p = (1−x²)(1−y²)(1−z²)
  for (Index N : {4, 6}) {
    const double kappa = 1.0;
    ProblemSpec s;
    s.dim = 3;
    s.N = N;
    s.kappa = kappa;
    s.f = [kappa](const Point& x) {
      const double X = 1 - x[0] * x[0], Y = 1 - x[1] * x[1], Z = 1 - x[2] * x[2];
      const double p = X * Y * Z;
      const double d11 = -2 * Y * Z, d22 = -2 * X * Z, d33 = -2 * X * Y;
      const double d12 = 4 * x[0] * x[1] * Z, d13 = 4 * x[0] * x[2] * Y, d23 = 4 * x[1] * x[2] * X;
      return Vec3{d12 + d13 - d22 - d33 + kappa * p, d12 + d23 - d11 - d33 + kappa * p,
                  d13 + d23 - d11 - d22 + kappa * p};
    };
    s.rho = [](const Point& x) {
      const double X = 1 - x[0] * x[0], Y = 1 - x[1] * x[1], Z = 1 - x[2] * x[2];
      return -2 * x[0] * Y * Z - 2 * x[1] * X * Z - 2 * x[2] * X * Y;
    };
    const MassDecomp dec = decompose_mass(build_mass_matrix(N));
    const Solve3DResult r = solve_source_3d(assemble_source_3d(s), kappa, dec);
    for (double x : {-0.8, 0.1})
      for (double y : {-0.3, 0.7})
        for (double z : {-0.55, 0.4}) {
          const double p = (1 - x * x) * (1 - y * y) * (1 - z * z);
          const Vec3 v = evaluate_at(r.field, {x, y, z});
          for (int i = 0; i < 3; ++i) EXPECT_NEAR(v[i], p, 1e-10);
        }
    EXPECT_LT(r.field.P->max_abs(), 1e-10);
  }
}

TEST(Solve3D, Ex54AtOrder24) {
  const Preset p = get_preset("ex5_4");
  for (double kappa : {100.0, -100.0}) {
    const PresetSolve s = solve_preset(p, PresetParams::at(24, kappa));
    EXPECT_LT(preset_error(p, s)->l2, 1e-10) << kappa;
  }
}

TEST(GaussResidual3D, TrivialCases) {
  const Index N = 4;
  const MassMatrix m = build_mass_matrix(N);
  SourceData3D src = SourceData3D::zeros(N);
  const SpectralField3D zero = SpectralField3D::zeros(N);
  EXPECT_EQ(gauss_residual_3d(zero, src, m), 0.0);
  src.R(1, 2, 0) = 1.0;
  EXPECT_EQ(gauss_residual_3d(zero, src, m), 1.0);
}

TEST(GaussResidual3D, NormwiseScaleBoundsComponentwise) {
  for (Index N : {6, 20}) {
    const MassMatrix m = build_mass_matrix(N);
    const SourceData3D src = bench::random_source_3d(N, N);
    const auto r = solve_source_3d(src, 30.0, decompose_mass(m));
    const GaussResidual g = gauss_residual_terms_3d(r.field, src, m);
    EXPECT_LE(g.componentwise_scale, g.scale * (1.0 + 1e-14));
    EXPECT_LT(g.relative(), 1e-14) << N;
    EXPECT_LT(g.componentwise_relative(), 1e-12) << N;
  }
}

TEST(Solve3D, AgreesWithDenseOracle) {
  for (Index N = 3; N <= 6; ++N) {
    const MassDecomp dec = decompose_mass(build_mass_matrix(N));
    for (double kappa : {0.0, 1.0, -7.3, 100.0}) {
      const oracle::DensePencil sys = oracle::assemble_dense_3d(kappa, N);
      const SourceData3D src = bench::random_source_3d(N, 40 + N);
      const Solve3DResult r = solve_source_3d(src, kappa, dec);
      const SpectralField3D ref = unstack_field_3d(oracle::dense_solve(sys, stack(src)), N);
      EXPECT_LT(testing_support::rel_diff(vec(r.field.U), vec(ref.U)), 1e-9);
      EXPECT_LT(testing_support::rel_diff(vec(r.field.V), vec(ref.V)), 1e-9);
      EXPECT_LT(testing_support::rel_diff(vec(r.field.W), vec(ref.W)), 1e-9);
      EXPECT_LT(testing_support::rel_diff(vec(*r.field.P), vec(*ref.P)), 1e-9);
      EXPECT_LT(r.report.gauss_residual_relative, 1e-10);
    }
  }
}

TEST(Solve3D, ConsumingOverloadMatches) {
  const Index N = 9;
  const MassDecomp dec = decompose_mass(build_mass_matrix(N));
  const SourceData3D src = bench::random_source_3d(N, 3);
  const Solve3DResult a = solve_source_3d(src, -2.0, dec);
  SourceData3D copy = src;
  const Solve3DResult b = solve_source_3d(std::move(copy), -2.0, dec);
  EXPECT_TRUE(b.report.residual_in_transformed_basis);
  EXPECT_LT(b.report.gauss_residual_relative, 1e-10);
  EXPECT_LT(testing_support::rel_diff(stack(b.field), stack(a.field)), 1e-13);
  EXPECT_LT(gauss_residual_terms_3d(b.field, src, build_mass_matrix(N)).relative(), 1e-10);
}

TEST(Solve3D, InteriorModeSatisfiesFourByFourSystem) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0), d(0.001, 0.5);
  for (int trial = 0; trial < 200; ++trial) {
    const double di = d(rng), dj = d(rng), dk = d(rng), kappa = 50 * u(rng);
    const double f1 = u(rng), f2 = u(rng), f3 = u(rng), r = u(rng);
    const auto [u1, u2, u3, p] = detail::solve_interior_mode(di, dj, dk, kappa, f1, f2, f3, r);
    const double e1 = (dj + dk + kappa * dj * dk) * u1 - dk * u2 - dj * u3 + dj * dk * p - f1;
    const double e2 = -dk * u1 + (di + dk + kappa * di * dk) * u2 - di * u3 + di * dk * p - f2;
    const double e3 = -dj * u1 - di * u2 + (di + dj + kappa * di * dj) * u3 + di * dj * p - f3;
    const double e4 = dj * dk * u1 + di * dk * u2 + di * dj * u3 - r;
    const double scale = 1.0 + std::abs(u1) + std::abs(u2) + std::abs(u3) + std::abs(p);
    EXPECT_LT(std::max({std::abs(e1), std::abs(e2), std::abs(e3), std::abs(e4)}), 1e-12 * scale);
  }
}

TEST(Solve3D, ResonanceAtFaceAndInteriorEigenvalues) {
  const Index N = 4;
  const MassDecomp dec = decompose_mass(build_mass_matrix(N));
  const SourceData3D src = bench::random_source_3d(N, 8);
  const Spectrum sp = spectrum_3d(dec);
  for (const EigenMode& m : sp.modes) {
    if (m.value == 0.0) continue;
    try {
      solve_source_3d(src, -m.value, dec);
      ADD_FAILURE() << "no ResonantKappa at " << m.value;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::resonant_kappa);
    }
  }
  EXPECT_NO_THROW(solve_source_3d(src, 0.0, dec));
  EXPECT_THROW(solve_source_3d(SourceData3D::zeros(5), 1.0, dec), Error);
}

TEST(Solve3D, StrategyAndThreadIndependent) {
  const Index N = 33;
  const MassDecomp dec = decompose_mass(build_mass_matrix(N));
  const SourceData3D src = bench::random_source_3d(N, 5);
  const Solve3DResult a = solve_source_3d(src, 4.0, dec);
  const Solve3DResult b = solve_source_3d(src, 4.0, dec, {MatmulStrategy::strassen(8)});
  EXPECT_LT(testing_support::rel_diff(stack(b.field), stack(a.field)), 1e-10);
  set_num_threads(3);
  const Solve3DResult c = solve_source_3d(src, 4.0, dec);
  set_num_threads(1);
  EXPECT_EQ(testing_support::max_abs_diff(stack(c.field), stack(a.field)), 0.0);
}
