// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <atomic>

#include "curlspec/error.hpp"
#include "curlspec/parallel.hpp"
#include "curlspec/tensorops.hpp"
#include "support.hpp"

using namespace curlspec;
using testing_support::kron;
using testing_support::random_matrix;
using testing_support::random_tensor;

namespace {

double max_diff(const DenseMatrix& a, const DenseMatrix& b) {
  double d = 0.0;
  for (Index i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
  return d;
}

double max_diff(const Tensor3& a, const Tensor3& b) {
  double d = 0.0;
  for (Index i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
  return d;
}

DenseMatrix naive_product(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix c(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (Index k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

}  // namespace

TEST(Vec, ColumnMajorOrder) {
  DenseMatrix x(2, 2);
  x(0, 0) = 1;
  x(0, 1) = 2;
  x(1, 0) = 3;
  x(1, 1) = 4;
  EXPECT_EQ(vec(x), (std::vector<double>{1, 3, 2, 4}));
  Tensor3 t(2, 2, 2);
  t(1, 0, 0) = 5;
  t(0, 1, 0) = 6;
  t(0, 0, 1) = 7;
  const std::vector<double> v = vec(t);
  EXPECT_EQ(v[1], 5);
  EXPECT_EQ(v[2], 6);
  EXPECT_EQ(v[4], 7);
}

TEST(Vec, RoundTripIsBitExact) {
  std::mt19937_64 rng(1);
  for (Index r : {1, 2, 5})
    for (Index c : {1, 3, 4}) {
      const DenseMatrix x = random_matrix(r, c, rng);
      const DenseMatrix y = ivec(vec(x), r, c);
      for (Index i = 0; i < x.size(); ++i) EXPECT_EQ(x.data()[i], y.data()[i]);
      const Tensor3 t = random_tensor(r, c, r + c, rng);
      const Tensor3 u = ivec(vec(t), t.dims());
      for (Index i = 0; i < t.size(); ++i) EXPECT_EQ(t.data()[i], u.data()[i]);
    }
  EXPECT_THROW(ivec(std::vector<double>(5), 2, 3), Error);
}

TEST(DenseMatrixBasics, IdentityTransposeView) {
  const DenseMatrix i3 = DenseMatrix::identity(3);
  for (Index r = 0; r < 3; ++r)
    for (Index c = 0; c < 3; ++c) EXPECT_EQ(i3(r, c), r == c ? 1.0 : 0.0);
  std::mt19937_64 rng(2);
  const DenseMatrix a = random_matrix(4, 6, rng);
  const DenseMatrix at = a.transposed();
  for (Index r = 0; r < 4; ++r)
    for (Index c = 0; c < 6; ++c) EXPECT_EQ(a(r, c), at(c, r));
  const DenseMatrix sub = DenseMatrix::from_view(a.view().block(1, 2, 2, 3));
  EXPECT_EQ(sub(1, 2), a(2, 4));
}

TEST(Matmul, IdentityAndScalar) {
  std::mt19937_64 rng(4);
  const DenseMatrix a = random_matrix(7, 5, rng);
  for (const MatmulStrategy s : {MatmulStrategy::classical(), MatmulStrategy::strassen(2)}) {
    const double tol = s.kind == MatmulStrategy::Kind::classical ? 0.0 : 1e-15;
    EXPECT_LE(max_diff(matmul(a, DenseMatrix::identity(5), s), a), tol);
    DenseMatrix x(1, 1, 3.0), y(1, 1, -2.5);
    EXPECT_EQ(matmul(x, y, s)(0, 0), -7.5);
  }
  EXPECT_THROW(matmul(a, a), Error);
}

TEST(Matmul, ClassicalMatchesNaive) {
  std::mt19937_64 rng(5);
  for (auto [m, k, n] : {std::array<Index, 3>{1, 1, 1}, {3, 7, 2}, {17, 9, 33}, {64, 64, 64}}) {
    const DenseMatrix a = random_matrix(m, k, rng), b = random_matrix(k, n, rng);
    EXPECT_LT(max_diff(matmul(a, b), naive_product(a, b)), 1e-13);
  }
}

TEST(Matmul, StrassenMatchesClassical) {
  std::mt19937_64 rng(6);
  {
    const DenseMatrix a = random_matrix(100, 100, rng), b = random_matrix(100, 100, rng);
    const DenseMatrix c = matmul(a, b), s = matmul(a, b, MatmulStrategy::strassen(32));
    EXPECT_LT(max_diff(c, s) / c.max_abs(), 1e-11);
  }
  for (auto [m, k, n, cut] : {std::array<Index, 4>{5, 3, 7, 1}, {33, 65, 17, 8}, {128, 128, 128, 16},
                              {129, 257, 130, 64}, {512, 512, 512, 64}}) {
    const DenseMatrix a = random_matrix(m, k, rng), b = random_matrix(k, n, rng);
    const DenseMatrix c = matmul(a, b), s = matmul(a, b, MatmulStrategy::strassen(cut));
    EXPECT_LT(max_diff(c, s) / c.max_abs(), 1e-11) << m << "x" << k << "x" << n;
  }
}

TEST(Gemm, StridedViews) {
  std::mt19937_64 rng(7);
  const DenseMatrix big_a = random_matrix(20, 20, rng), big_b = random_matrix(20, 20, rng);
  const ConstMatrixView a = big_a.view().block(2, 3, 6, 9);
  const ConstMatrixView b = big_b.view().block(5, 1, 9, 4);
  DenseMatrix big_c(12, 12, 7.0);
  for (const MatmulStrategy s : {MatmulStrategy::classical(), MatmulStrategy::strassen(2)}) {
    gemm(a, b, big_c.view().block(1, 2, 6, 4), s);
    const DenseMatrix ref = naive_product(DenseMatrix::from_view(a), DenseMatrix::from_view(b));
    for (Index i = 0; i < 6; ++i)
      for (Index j = 0; j < 4; ++j) EXPECT_NEAR(big_c(1 + i, 2 + j), ref(i, j), 1e-13);
    EXPECT_EQ(big_c(0, 0), 7.0);
    EXPECT_EQ(big_c(7, 2), 7.0);
  }
}

TEST(Kron2, IdentityLeavesInput) {
  std::mt19937_64 rng(8);
  const DenseMatrix x = random_matrix(4, 3, rng);
  EXPECT_EQ(max_diff(kron2_apply(DenseMatrix::identity(3), DenseMatrix::identity(4), x), x), 0.0);
}

TEST(Kron2, MatchesAssembledKronecker) {
  std::mt19937_64 rng(9);
  for (Index trial = 0; trial < 40; ++trial) {
    const Index ar = 1 + trial % 4, ac = 1 + (trial / 4) % 4, br = 1 + (trial + 1) % 4,
                bc = 1 + (trial / 3) % 4;
    const DenseMatrix a = random_matrix(ar, ac, rng), b = random_matrix(br, bc, rng);
    const DenseMatrix x = random_matrix(bc, ac, rng);
    const std::vector<double> ref = testing_support::matvec(kron(a, b), vec(x));
    const std::vector<double> got = vec(kron2_apply(a, b, x));
    EXPECT_LT(testing_support::rel_diff(got, ref), 1e-12);
  }
  EXPECT_THROW(kron2_apply(DenseMatrix(2, 2), DenseMatrix(2, 3), DenseMatrix(2, 2)), Error);
}

TEST(Kron2, RowSelectorPicksFirstColumn) {
  std::mt19937_64 rng(10);
  DenseMatrix e1t(1, 3);
  e1t(0, 0) = 1.0;
  const DenseMatrix b = random_matrix(2, 2, rng), x = random_matrix(2, 3, rng);
  const DenseMatrix y = kron2_apply(e1t, b, x);
  ASSERT_EQ(y.cols(), 1);
  for (Index i = 0; i < 2; ++i) EXPECT_NEAR(y(i, 0), b(i, 0) * x(0, 0) + b(i, 1) * x(1, 0), 1e-15);
}

TEST(Kron3, IdentityAndOracle) {
  std::mt19937_64 rng(11);
  const Tensor3 t = random_tensor(2, 3, 4, rng);
  EXPECT_EQ(max_diff(kron3_apply(DenseMatrix::identity(4), DenseMatrix::identity(3),
                                 DenseMatrix::identity(2), t),
                     t),
            0.0);
  for (Index trial = 0; trial < 30; ++trial) {
    const Index n1 = 1 + trial % 4, n2 = 1 + (trial / 2) % 4, n3 = 1 + (trial / 5) % 4;
    const DenseMatrix a = random_matrix(1 + (trial + 2) % 4, n3, rng);
    const DenseMatrix b = random_matrix(1 + (trial + 1) % 4, n2, rng);
    const DenseMatrix c = random_matrix(1 + trial % 3, n1, rng);
    const Tensor3 x = random_tensor(n1, n2, n3, rng);
    const std::vector<double> ref = testing_support::matvec(kron(a, kron(b, c)), vec(x));
    EXPECT_LT(testing_support::rel_diff(vec(kron3_apply(a, b, c, x)), ref), 1e-12);
  }
  EXPECT_THROW(kron3_apply(DenseMatrix(2, 2), DenseMatrix(2, 2), DenseMatrix(2, 3), t), Error);
}

TEST(Kron3, RankOneSeparates) {
  std::mt19937_64 rng(12);
  const DenseMatrix a = random_matrix(3, 3, rng), b = random_matrix(2, 2, rng),
                    c = random_matrix(4, 4, rng);
  const DenseMatrix va = random_matrix(4, 1, rng), vb = random_matrix(2, 1, rng),
                    vc = random_matrix(3, 1, rng);
  Tensor3 t(4, 2, 3);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 2; ++j)
      for (Index k = 0; k < 3; ++k) t(i, j, k) = va(i, 0) * vb(j, 0) * vc(k, 0);
  const Tensor3 y = kron3_apply(a, b, c, t);
  const DenseMatrix ca = matmul(c, va), bb = matmul(b, vb), ac = matmul(a, vc);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 2; ++j)
      for (Index k = 0; k < 3; ++k) EXPECT_NEAR(y(i, j, k), ca(i, 0) * bb(j, 0) * ac(k, 0), 1e-14);
}

TEST(ApplyCube, MatchesKron3OnStridedViews) {
  std::mt19937_64 rng(13);
  for (Index n : {1, 2, 5, 9}) {
    const DenseMatrix q = random_matrix(n, n, rng);
    Tensor3 host = random_tensor(n + 2, n + 1, n + 3, rng);
    Tensor3 inner(n, n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        for (Index k = 0; k < n; ++k) inner(i, j, k) = host(i + 1, j, k + 2);
    const Tensor3 ref = kron3_apply(q, q, q, inner);
    for (const MatmulStrategy s : {MatmulStrategy::classical(), MatmulStrategy::strassen(2)}) {
      Tensor3 work = host;
      TensorView3 v{work.data() + 1 + 2 * (n + 2) * (n + 1), n, n, n, n + 2, (n + 2) * (n + 1)};
      apply_cube_inplace(v, q, q.transposed(), s);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
          for (Index k = 0; k < n; ++k) EXPECT_NEAR(work(i + 1, j, k + 2), ref(i, j, k), 1e-13);
      EXPECT_EQ(work(0, 0, 0), host(0, 0, 0));
      EXPECT_EQ(work(n + 1, n, n + 2), host(n + 1, n, n + 2));
    }
  }
}

TEST(Selectors, VectorExample) {
  DenseMatrix v(3, 1);
  v(0, 0) = 1;
  v(1, 0) = 2;
  v(2, 0) = 3;
  const DenseMatrix first = restrict_first(v, 0, Selector::first);
  const DenseMatrix rest = restrict_first(v, 0, Selector::rest);
  ASSERT_EQ(first.rows(), 1);
  EXPECT_EQ(first(0, 0), 1);
  ASSERT_EQ(rest.rows(), 2);
  EXPECT_EQ(rest(0, 0), 2);
  EXPECT_EQ(rest(1, 0), 3);
}

TEST(Selectors, ExtendRestrictIdentityAndOrthogonality) {
  std::mt19937_64 rng(14);
  for (int axis = 0; axis < 2; ++axis) {
    const DenseMatrix x = random_matrix(axis == 0 ? 4 : 3, axis == 0 ? 3 : 4, rng);
    const DenseMatrix ext = extend_first(x, axis, Selector::rest, 5);
    EXPECT_EQ(max_diff(restrict_first(ext, axis, Selector::rest), x), 0.0);
    EXPECT_EQ(restrict_first(ext, axis, Selector::first).max_abs(), 0.0);
  }
  for (int axis = 0; axis < 3; ++axis) {
    Tensor3::Dims d{3, 3, 3};
    d[axis] = 1;
    const Tensor3 slice = random_tensor(d[0], d[1], d[2], rng);
    const Tensor3 ext = extend_first(slice, axis, Selector::first, 4);
    EXPECT_EQ(ext.dim(axis), 4);
    EXPECT_EQ(max_diff(restrict_first(ext, axis, Selector::first), slice), 0.0);
    EXPECT_EQ(restrict_first(ext, axis, Selector::rest).max_abs(), 0.0);
  }
  EXPECT_THROW(extend_first(DenseMatrix(3, 2), 0, Selector::rest, 3), Error);
  EXPECT_THROW(restrict_first(DenseMatrix(3, 2), 2, Selector::rest), Error);
}

TEST(Parallel, EveryIndexOnceAndThreadIndependent) {
  for (int threads : {1, 2, 3, 8}) {
    set_num_threads(threads);
    std::vector<std::atomic<int>> hits(1001);
    parallel_for(1001, [&](std::ptrdiff_t b, std::ptrdiff_t e, int) {
      for (auto i = b; i < e; ++i) hits[i]++;
    });
    for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
  std::mt19937_64 rng(15);
  const DenseMatrix q = random_matrix(17, 17, rng);
  const Tensor3 t = random_tensor(17, 17, 17, rng);
  set_num_threads(1);
  const Tensor3 a = kron3_apply(q, q, q, t);
  set_num_threads(4);
  const Tensor3 b = kron3_apply(q, q, q, t);
  set_num_threads(1);
  EXPECT_EQ(max_diff(a, b), 0.0);
}
