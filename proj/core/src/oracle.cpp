// SPDX-License-Identifier: Apache-2.0
#include "curlspec/oracle.hpp"

#include <Eigen/Dense>

#include <numeric>

#include "curlspec/error.hpp"
#include "curlspec/massmat.hpp"

namespace curlspec::oracle {

Index DofLayout::total() const noexcept { return std::accumulate(sizes.begin(), sizes.end(), Index{0}); }

namespace {

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index ja = 0; ja < a.cols(); ++ja)
    for (Index ia = 0; ia < a.rows(); ++ia) {
      const double s = a(ia, ja);
      if (s == 0.0) continue;
      for (Index jb = 0; jb < b.cols(); ++jb)
        for (Index ib = 0; ib < b.rows(); ++ib)
          k(ia * b.rows() + ib, ja * b.cols() + jb) = s * b(ib, jb);
    }
  return k;
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& c) {
  return kron(kron(a, b), c);
}

DenseMatrix scaled(const DenseMatrix& a, double s) {
  DenseMatrix out = a;
  for (double& v : out.values()) v *= s;
  return out;
}

DenseMatrix sum(std::initializer_list<DenseMatrix> terms) {
  DenseMatrix out = *terms.begin();
  for (auto it = terms.begin() + 1; it != terms.end(); ++it)
    for (Index q = 0; q < out.size(); ++q) out.data()[q] += it->data()[q];
  return out;
}

// Selector E ∈ R^{(N−1)×N}: drops index 0.
DenseMatrix selector_rest(Index N) {
  DenseMatrix e(N - 1, N);
  for (Index r = 0; r < N - 1; ++r) e(r, r + 1) = 1.0;
  return e;
}

struct Blocks {
  std::vector<Index> offsets;
  DenseMatrix A;

  Blocks(const std::vector<Index>& sizes) {
    offsets.push_back(0);
    for (Index s : sizes) offsets.push_back(offsets.back() + s);
    A = DenseMatrix(offsets.back(), offsets.back());
  }
  // Places blk at (r, c) and its transpose at (c, r).
  void put(int r, int c, const DenseMatrix& blk, bool mirror = true) {
    require(blk.rows() == offsets[r + 1] - offsets[r] && blk.cols() == offsets[c + 1] - offsets[c],
            ErrorCode::dimension_mismatch, "oracle block has wrong shape");
    for (Index j = 0; j < blk.cols(); ++j)
      for (Index i = 0; i < blk.rows(); ++i) {
        A(offsets[r] + i, offsets[c] + j) = blk(i, j);
        if (mirror && r != c) A(offsets[c] + j, offsets[r] + i) = blk(i, j);
      }
  }
};

void check_cap(Index N, Index cap) {
  require(N >= 2, ErrorCode::invalid_argument, "N must be at least 2");
  if (N > cap) raise(ErrorCode::cap_exceeded, "dense oracle N exceeds cap");
}

DofLayout layout(int dim, Index N, bool with_p) {
  const Index n = N - 1;
  DofLayout l{dim, N, {}, {}};
  const Index comp = dim == 2 ? N * n : N * n * n;
  l.names = dim == 2 ? std::vector<std::string>{"u", "v"} : std::vector<std::string>{"u", "v", "w"};
  l.sizes.assign(dim, comp);
  if (with_p) {
    l.names.push_back("p");
    l.sizes.push_back(dim == 2 ? n * n : n * n * n);
  }
  return l;
}

}  // namespace

DensePencil assemble_dense_2d(double kappa, Index N, Index cap) {
  check_cap(N, cap);
  const Index n = N - 1;
  const DenseMatrix M = build_mass_matrix(N).dense();
  const DenseMatrix I = DenseMatrix::identity(n), IN = DenseMatrix::identity(N);
  const DenseMatrix E = selector_rest(N), Et = E.transposed();
  const DenseMatrix IkM = sum({I, scaled(M, kappa)});

  DensePencil p;
  p.layout = layout(2, N, true);
  Blocks b(p.layout.sizes);
  b.put(0, 0, kron(IkM, IN));
  b.put(0, 1, scaled(kron(E, Et), -1.0));
  b.put(0, 2, kron(M, Et));
  b.put(1, 1, kron(IN, IkM));
  b.put(1, 2, kron(Et, M));
  p.A = std::move(b.A);
  return p;
}

DensePencil assemble_dense_3d(double kappa, Index N, Index cap) {
  check_cap(N, cap);
  const Index n = N - 1;
  const DenseMatrix M = build_mass_matrix(N).dense();
  const DenseMatrix I = DenseMatrix::identity(n), IN = DenseMatrix::identity(N);
  const DenseMatrix E = selector_rest(N), Et = E.transposed();

  DensePencil p;
  p.layout = layout(3, N, true);
  Blocks b(p.layout.sizes);
  b.put(0, 0, sum({kron(I, M, IN), kron(M, I, IN), scaled(kron(M, M, IN), kappa)}));
  b.put(1, 1, sum({kron(I, IN, M), kron(M, IN, I), scaled(kron(M, IN, M), kappa)}));
  b.put(2, 2, sum({kron(IN, I, M), kron(IN, M, I), scaled(kron(IN, M, M), kappa)}));
  b.put(0, 1, scaled(kron(M, E, Et), -1.0));
  b.put(0, 2, scaled(kron(E, M, Et), -1.0));
  b.put(1, 2, scaled(kron(E, Et, M), -1.0));
  b.put(0, 3, kron(M, M, Et));
  b.put(1, 3, kron(M, Et, M));
  b.put(2, 3, kron(Et, M, M));
  p.A = std::move(b.A);
  return p;
}

DensePencil assemble_pencil_2d(Index N, Index cap) {
  check_cap(N, cap);
  const Index n = N - 1;
  const DenseMatrix M = build_mass_matrix(N).dense();
  const DenseMatrix I = DenseMatrix::identity(n), IN = DenseMatrix::identity(N);
  const DenseMatrix E = selector_rest(N), Et = E.transposed();

  DensePencil p;
  p.layout = layout(2, N, false);
  Blocks a(p.layout.sizes), bm(p.layout.sizes);
  a.put(0, 0, kron(I, IN));
  a.put(0, 1, scaled(kron(E, Et), -1.0));
  a.put(1, 1, kron(IN, I));
  bm.put(0, 0, kron(M, IN));
  bm.put(1, 1, kron(IN, M));
  p.A = std::move(a.A);
  p.B = std::move(bm.A);
  return p;
}

DensePencil assemble_pencil_3d(Index N, Index cap) {
  check_cap(N, cap);
  const Index n = N - 1;
  const DenseMatrix M = build_mass_matrix(N).dense();
  const DenseMatrix I = DenseMatrix::identity(n), IN = DenseMatrix::identity(N);
  const DenseMatrix E = selector_rest(N), Et = E.transposed();

  DensePencil p;
  p.layout = layout(3, N, false);
  Blocks a(p.layout.sizes), bm(p.layout.sizes);
  a.put(0, 0, sum({kron(I, M, IN), kron(M, I, IN)}));
  a.put(1, 1, sum({kron(I, IN, M), kron(M, IN, I)}));
  a.put(2, 2, sum({kron(IN, I, M), kron(IN, M, I)}));
  a.put(0, 1, scaled(kron(M, E, Et), -1.0));
  a.put(0, 2, scaled(kron(E, M, Et), -1.0));
  a.put(1, 2, scaled(kron(E, Et, M), -1.0));
  bm.put(0, 0, kron(M, M, IN));
  bm.put(1, 1, kron(M, IN, M));
  bm.put(2, 2, kron(IN, M, M));
  p.A = std::move(a.A);
  p.B = std::move(bm.A);
  return p;
}

namespace {

Eigen::Map<const Eigen::MatrixXd> as_eigen(const DenseMatrix& m) {
  return {m.data(), m.rows(), m.cols()};
}

}  // namespace

std::vector<double> dense_solve(const DensePencil& p, std::span<const double> rhs) {
  require(!p.B, ErrorCode::invalid_argument, "dense_solve expects a source system");
  require(static_cast<Index>(rhs.size()) == p.A.rows(), ErrorCode::length_mismatch,
          "rhs length does not match the system");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(as_eigen(p.A));
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) raise(ErrorCode::singular_matrix, "dense system is singular");
  const Eigen::VectorXd x = lu.solve(Eigen::Map<const Eigen::VectorXd>(rhs.data(), rhs.size()));
  return {x.data(), x.data() + x.size()};
}

DenseEigen dense_eig(const DensePencil& p, bool want_vectors) {
  DenseEigen out;
  const auto opts = want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  if (p.B) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(as_eigen(p.A), as_eigen(*p.B),
                                                                 opts | Eigen::Ax_lBx);
    if (es.info() != Eigen::Success) raise(ErrorCode::decomposition_failed, "dense pencil eigensolve failed");
    out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    if (want_vectors) {
      out.vectors = DenseMatrix(p.A.rows(), p.A.cols());
      Eigen::Map<Eigen::MatrixXd>(out.vectors.data(), p.A.rows(), p.A.cols()) = es.eigenvectors();
    }
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(as_eigen(p.A), opts);
    if (es.info() != Eigen::Success) raise(ErrorCode::decomposition_failed, "dense eigensolve failed");
    out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    if (want_vectors) {
      out.vectors = DenseMatrix(p.A.rows(), p.A.cols());
      Eigen::Map<Eigen::MatrixXd>(out.vectors.data(), p.A.rows(), p.A.cols()) = es.eigenvectors();
    }
  }
  return out;
}

std::vector<double> apply(const DenseMatrix& a, std::span<const double> x) {
  require(static_cast<Index>(x.size()) == a.cols(), ErrorCode::length_mismatch, "apply length mismatch");
  std::vector<double> y(a.rows(), 0.0);
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) y[i] += a(i, j) * x[j];
  return y;
}

}  // namespace curlspec::oracle
