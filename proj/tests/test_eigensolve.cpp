// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curlspec/assembly.hpp"
#include "curlspec/eigensolve.hpp"
#include "curlspec/error.hpp"
#include "curlspec/legendre.hpp"
#include "curlspec/oracle.hpp"
#include "curlspec/solver2d.hpp"
#include "curlspec/solver3d.hpp"
#include "support.hpp"

using namespace curlspec;

namespace {

const double kScale = std::numbers::pi * std::numbers::pi / 4.0;

std::vector<double> all_values(const Spectrum& s) {
  std::vector<double> v;
  for (const EigenMode& m : s.modes) v.push_back(m.value);
  return v;
}

std::vector<double> field_part(std::vector<double> x, Index size) {
  x.resize(static_cast<std::size_t>(size));
  return x;
}

double pencil_residual(const oracle::DensePencil& p, const std::vector<double>& x, double lambda) {
  const std::vector<double> ax = oracle::apply(p.A, x), bx = oracle::apply(*p.B, x);
  double r = 0;
  for (std::size_t i = 0; i < x.size(); ++i) r = std::max(r, std::abs(ax[i] - lambda * bx[i]));
  return r / ((p.A.max_abs() + std::abs(lambda) * p.B->max_abs()) * testing_support::max_abs(x));
}

}  // namespace

class SpectrumCounts : public ::testing::TestWithParam<Index> {};

TEST_P(SpectrumCounts, CategoriesHaveTheRightSizes) {
  const Index N = GetParam(), n = N - 1;
  const MassDecomp dec = decompose_mass(build_mass_matrix(N));
  const Spectrum s2 = spectrum_2d(dec);
  EXPECT_EQ(s2.summary.interior, n * n);
  EXPECT_EQ(s2.summary.boundary, 2 * n);
  EXPECT_EQ(s2.summary.gradient, n * n);
  EXPECT_EQ(s2.summary.zero_multiplicity, n * n);
  EXPECT_EQ(static_cast<Index>(s2.summary.nonzero.size()), n * n + 2 * n);
  EXPECT_EQ(static_cast<Index>(s2.modes.size()), 2 * N * n);
  EXPECT_TRUE(std::is_sorted(s2.summary.nonzero.begin(), s2.summary.nonzero.end()));
  EXPECT_EQ(nonzero_eigenvalues_2d(dec), s2.summary.nonzero);

  const Spectrum s3 = spectrum_3d(dec);
  EXPECT_EQ(s3.summary.interior, 2 * n * n * n);
  EXPECT_EQ(s3.summary.boundary, 3 * n * n);
  EXPECT_EQ(s3.summary.gradient, n * n * n);
  EXPECT_EQ(static_cast<Index>(s3.modes.size()), 3 * N * n * n);
  EXPECT_EQ(nonzero_eigenvalues_3d(dec), s3.summary.nonzero);
  for (const std::vector<EigenMode>* modes : {&s2.modes, &s3.modes})
    for (std::size_t i = 1; i < modes->size(); ++i) EXPECT_LE((*modes)[i - 1].value, (*modes)[i].value);
}

INSTANTIATE_TEST_SUITE_P(Orders, SpectrumCounts, ::testing::Range<Index>(2, 13));

TEST(Spectrum, LowestOrderValues) {
  const MassDecomp dec = decompose_mass(build_mass_matrix(2));
  EXPECT_NEAR(dec.d[0], 0.4, 1e-15);
  const std::vector<double> v2 = spectrum_2d(dec).summary.nonzero;
  ASSERT_EQ(v2.size(), 3u);
  EXPECT_NEAR(v2[0], 2.5, 1e-14);
  EXPECT_NEAR(v2[1], 2.5, 1e-14);
  EXPECT_NEAR(v2[2], 5.0, 1e-14);
  const Spectrum s3 = spectrum_3d(dec);
  ASSERT_EQ(s3.summary.nonzero.size(), 5u);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(s3.summary.nonzero[i], 5.0, 1e-14);
  for (int i = 3; i < 5; ++i) EXPECT_NEAR(s3.summary.nonzero[i], 7.5, 1e-14);
  EXPECT_EQ(s3.summary.gradient, 1);
}

TEST(Spectrum, MatchesDensePencil) {
  for (Index N = 2; N <= 9; ++N) {
    const MassDecomp dec = decompose_mass(build_mass_matrix(N));
    const std::vector<double> fast = all_values(spectrum_2d(dec));
    const std::vector<double> dense = oracle::dense_eig(oracle::assemble_pencil_2d(N)).values;
    ASSERT_EQ(fast.size(), dense.size());
    for (std::size_t i = 0; i < fast.size(); ++i)
      EXPECT_NEAR(fast[i], dense[i], 1e-9 * (1 + fast.back())) << N << " " << i;
  }
  for (Index N = 2; N <= 5; ++N) {
    const MassDecomp dec = decompose_mass(build_mass_matrix(N));
    const std::vector<double> fast = all_values(spectrum_3d(dec));
    const std::vector<double> dense = oracle::dense_eig(oracle::assemble_pencil_3d(N)).values;
    ASSERT_EQ(fast.size(), dense.size());
    for (std::size_t i = 0; i < fast.size(); ++i)
      EXPECT_NEAR(fast[i], dense[i], 1e-9 * (1 + fast.back())) << N << " " << i;
  }
}

TEST(Eigenvectors, SatisfyPencilAndDivergenceConstraint2D) {
  for (Index N : {3, 6, 9}) {
    const MassDecomp dec = decompose_mass(build_mass_matrix(N));
    const MassMatrix m = build_mass_matrix(N);
    const oracle::DensePencil p = oracle::assemble_pencil_2d(N);
    const SourceData2D none = SourceData2D::zeros(N);
    for (const EigenMode& mode : spectrum_2d(dec).modes) {
      const SpectralField2D f = eigenvector_2d(mode, dec);
      const std::vector<double> x = field_part(stack(f), p.layout.total());
      EXPECT_LT(pencil_residual(p, x, mode.value), 1e-12) << to_string(mode.category);
      EXPECT_GT(testing_support::max_abs(x), 0.1);
      if (mode.category != ModeCategory::gradient) {
        EXPECT_LE(gauss_residual_2d(f, none, m), 1e-12);
      }
    }
  }
}

TEST(Eigenvectors, SatisfyPencilAndDivergenceConstraint3D) {
  for (Index N : {3, 5}) {
    const MassDecomp dec = decompose_mass(build_mass_matrix(N));
    const MassMatrix m = build_mass_matrix(N);
    const oracle::DensePencil p = oracle::assemble_pencil_3d(N);
    const SourceData3D none = SourceData3D::zeros(N);
    for (const EigenMode& mode : spectrum_3d(dec).modes) {
      const SpectralField3D f = eigenvector_3d(mode, dec);
      const std::vector<double> x = field_part(stack(f), p.layout.total());
      EXPECT_LT(pencil_residual(p, x, mode.value), 1e-12) << to_string(mode.category);
      if (mode.category != ModeCategory::gradient) {
        EXPECT_LE(gauss_residual_3d(f, none, m), 1e-12);
      }
    }
  }
}

TEST(Eigenvectors, GradientModesAreGradients) {
  const Index N = 6;
  const MassDecomp dec = decompose_mass(build_mass_matrix(N));
  for (Index i : {1, 3, 5})
    for (Index j : {1, 2, 5}) {
      const SpectralField2D f = eigenvector_2d({0.0, ModeCategory::gradient, {i, j, 0}, 0}, dec);
      for (double x : {-0.7, 0.2, 0.9})
        for (double y : {-0.4, 0.55}) {
          const Vec3 v = evaluate_at(f, {x, y, 0});
          EXPECT_NEAR(v[0], phi(i, x) * psi(j, y), 1e-13);
          EXPECT_NEAR(v[1], psi(i, x) * phi(j, y), 1e-13);
        }
    }
  const SpectralField3D g = eigenvector_3d({0.0, ModeCategory::gradient, {2, 1, 4}, 0}, dec);
  const Point x{0.3, -0.6, 0.45};
  const Vec3 v = evaluate_at(g, x);
  EXPECT_NEAR(v[0], phi(2, x[0]) * psi(1, x[1]) * psi(4, x[2]), 1e-13);
  EXPECT_NEAR(v[1], psi(2, x[0]) * phi(1, x[1]) * psi(4, x[2]), 1e-13);
  EXPECT_NEAR(v[2], psi(2, x[0]) * psi(1, x[1]) * phi(4, x[2]), 1e-13);
}

TEST(Eigenvectors, InteriorBranchesAreIndependent) {
  const MassDecomp dec = decompose_mass(build_mass_matrix(5));
  for (const EigenMode& mode : spectrum_3d(dec).modes) {
    if (mode.category != ModeCategory::interior || mode.branch != 1) continue;
    EigenMode other = mode;
    other.branch = 2;
    const std::vector<double> a = stack(eigenvector_3d(mode, dec));
    const std::vector<double> b = stack(eigenvector_3d(other, dec));
    const double c = testing_support::dot(a, b) /
                     std::sqrt(testing_support::dot(a, a) * testing_support::dot(b, b));
    EXPECT_LT(std::abs(c), 1.0 - 1e-3);
  }
}

TEST(Eigenvectors, RejectsBadIndices) {
  const MassDecomp dec = decompose_mass(build_mass_matrix(4));
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::invalid_argument;
  };
  EXPECT_EQ(code([&] { eigenvector_2d({1.0, ModeCategory::interior, {0, 1, 0}, 0}, dec); }),
            ErrorCode::index_out_of_range);
  EXPECT_EQ(code([&] { eigenvector_2d({1.0, ModeCategory::edge_x, {0, 4, 0}, 0}, dec); }),
            ErrorCode::index_out_of_range);
  EXPECT_EQ(code([&] { eigenvector_2d({1.0, ModeCategory::face_x, {0, 1, 1}, 0}, dec); }),
            ErrorCode::index_out_of_range);
  EXPECT_EQ(code([&] { eigenvector_3d({1.0, ModeCategory::interior, {1, 1, 1}, 0}, dec); }),
            ErrorCode::index_out_of_range);
  EXPECT_EQ(code([&] { eigenvector_3d({1.0, ModeCategory::face_z, {1, 9, 0}, 0}, dec); }),
            ErrorCode::index_out_of_range);
}

TEST(ExactSpectrum, KnownMultiplicities) {
  const std::vector<double> e2 = exact_spectrum(2, 40);
  ASSERT_EQ(e2.size(), 40u);
  std::vector<long> k;
  for (double v : e2) k.push_back(std::lround(v / kScale));
  const std::vector<long> head{1, 1, 2, 4, 4, 5, 5, 8, 9, 9, 10, 10};
  EXPECT_TRUE(std::equal(head.begin(), head.end(), k.begin()));
  EXPECT_EQ(std::count(k.begin(), k.end(), 25L), 4);
  for (double v : e2) EXPECT_NEAR(v / kScale, std::round(v / kScale), 1e-12);

  const std::vector<double> e3 = exact_spectrum(3, 5);
  const std::vector<long> h3{2, 2, 2, 3, 3};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(std::lround(e3[i] / kScale), h3[i]);
}

TEST(TrustedFraction, SortedPairing) {
  const std::vector<double> a{1.0, 2.0, 3.0, 4.0};
  EXPECT_EQ(trusted_fraction(a, a, 1e-6), 1.0);
  const std::vector<double> b{1.0, 2.1, 3.0, 5.0};
  EXPECT_EQ(trusted_fraction(b, a, 0.01), 0.5);
  const std::vector<double> c{1.0};
  EXPECT_EQ(trusted_fraction(c, a, 0.1), 1.0);
  try {
    trusted_fraction(a, c, 0.1);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::length_mismatch);
  }
}

TEST(TrustedFraction, PerModePairingMatchesModeList) {
  for (Index N : {6, 12, 25}) {
    const MassDecomp dec = decompose_mass(build_mass_matrix(N));
    for (int dim : {2, 3}) {
      const Spectrum s = dim == 2 ? spectrum_2d(dec) : spectrum_3d(dec);
      Index good = 0, total = 0;
      for (const EigenMode& m : s.modes) {
        if (m.category == ModeCategory::gradient) continue;
        const double ex = exact_mode_value(m, N);
        ++total;
        if (std::abs(m.value - ex) <= 0.01 * ex) ++good;
      }
      const double expected = static_cast<double>(good) / static_cast<double>(total);
      EXPECT_NEAR(trusted_fraction_modes(dim, dec, 0.01), expected, 1e-15) << dim << " " << N;
      const MassDecomp vals = decompose_mass(build_mass_matrix(N), EigenvectorPolicy::skip);
      EXPECT_EQ(trusted_fraction_modes(dim, vals, 0.01), trusted_fraction_modes(dim, dec, 0.01));
    }
  }
}

TEST(TrustedFraction, LowModesConverge) {
  const Index N = 40;
  const MassDecomp dec = decompose_mass(build_mass_matrix(N));
  const Spectrum s = spectrum_2d(dec);
  for (std::size_t q = 0; q < 12; ++q) {
    const EigenMode& m = s.modes[s.summary.zero_multiplicity + q];
    EXPECT_NEAR(m.value, exact_mode_value(m, N), 1e-10 * m.value);
  }
  EXPECT_EQ(exact_mode_value({0.0, ModeCategory::gradient, {1, 1, 0}, 0}, N), 0.0);
  EXPECT_NEAR(exact_mode_value({1.0, ModeCategory::edge_x, {0, N - 1, 0}, 0}, N), kScale, 1e-15);
}
