// SPDX-License-Identifier: Apache-2.0
#include "curlspec/tensorops.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "curlspec/error.hpp"
#include "curlspec/parallel.hpp"

namespace curlspec {

DenseMatrix::DenseMatrix(Index rows, Index cols, double value)
    : rows_(rows), cols_(cols), values_(static_cast<std::size_t>(rows * cols), value) {
  require(rows >= 0 && cols >= 0, ErrorCode::invalid_argument, "negative matrix extent");
}

DenseMatrix DenseMatrix::identity(Index n) {
  DenseMatrix m(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::from_view(ConstMatrixView v) {
  DenseMatrix m(v.rows, v.cols);
  for (Index j = 0; j < v.cols; ++j)
    std::copy_n(v.data + j * v.ld, v.rows, m.data() + j * v.rows);
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (Index j = 0; j < cols_; ++j)
    for (Index i = 0; i < rows_; ++i) t(j, i) = (*this)(i, j);
  return t;
}

double DenseMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Tensor3::Tensor3(Index n1, Index n2, Index n3, double value)
    : dims_{n1, n2, n3}, values_(static_cast<std::size_t>(n1 * n2 * n3), value) {
  require(n1 >= 0 && n2 >= 0 && n3 >= 0, ErrorCode::invalid_argument, "negative tensor extent");
}

double Tensor3::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> Tensor3::release() noexcept {
  dims_ = {0, 0, 0};
  return std::move(values_);
}

Tensor3 Tensor3::adopt(Dims dims, std::vector<double>&& values) {
  require(static_cast<Index>(values.size()) == dims[0] * dims[1] * dims[2],
          ErrorCode::length_mismatch, "adopted storage does not match dims");
  Tensor3 t;
  t.dims_ = dims;
  t.values_ = std::move(values);
  return t;
}

std::vector<double> vec(const DenseMatrix& x) { return {x.values().begin(), x.values().end()}; }
std::vector<double> vec(const Tensor3& t) { return {t.values().begin(), t.values().end()}; }

DenseMatrix ivec(std::span<const double> v, Index rows, Index cols) {
  require(static_cast<Index>(v.size()) == rows * cols, ErrorCode::length_mismatch,
          "ivec length does not match shape");
  DenseMatrix m(rows, cols);
  std::copy(v.begin(), v.end(), m.data());
  return m;
}

Tensor3 ivec(std::span<const double> v, Tensor3::Dims dims) {
  require(static_cast<Index>(v.size()) == dims[0] * dims[1] * dims[2],
          ErrorCode::length_mismatch, "ivec length does not match dims");
  Tensor3 t(dims);
  std::copy(v.begin(), v.end(), t.data());
  return t;
}

namespace {

using ConstMap = Eigen::Map<const Eigen::MatrixXd, 0, Eigen::OuterStride<>>;
using MutMap = Eigen::Map<Eigen::MatrixXd, 0, Eigen::OuterStride<>>;

void classical_gemm(ConstMatrixView a, ConstMatrixView b, MatrixView c) {
  if (c.rows == 0 || c.cols == 0) return;
  MutMap cm(c.data, c.rows, c.cols, Eigen::OuterStride<>(c.ld));
  if (a.cols == 0) {
    cm.setZero();
    return;
  }
  ConstMap am(a.data, a.rows, a.cols, Eigen::OuterStride<>(a.ld));
  ConstMap bm(b.data, b.rows, b.cols, Eigen::OuterStride<>(b.ld));
  cm.noalias() = am * bm;
}

// out = x + sign * y over equally shaped views.
void combine(ConstMatrixView x, ConstMatrixView y, double sign, MatrixView out) {
  for (Index j = 0; j < out.cols; ++j) {
    const double* xp = x.data + j * x.ld;
    const double* yp = y.data + j * y.ld;
    double* op = out.data + j * out.ld;
    for (Index i = 0; i < out.rows; ++i) op[i] = xp[i] + sign * yp[i];
  }
}

void assign(MatrixView out, ConstMatrixView x) {
  for (Index j = 0; j < out.cols; ++j) std::copy_n(x.data + j * x.ld, out.rows, out.data + j * out.ld);
}

void accumulate(MatrixView out, ConstMatrixView x, double sign) {
  for (Index j = 0; j < out.cols; ++j) {
    const double* xp = x.data + j * x.ld;
    double* op = out.data + j * out.ld;
    for (Index i = 0; i < out.rows; ++i) op[i] += sign * xp[i];
  }
}

struct StrassenLevel {
  DenseMatrix ta, tb, p;
};

// All extents are divisible by 2^levels.
void strassen_rec(ConstMatrixView a, ConstMatrixView b, MatrixView c,
                  std::span<StrassenLevel> work) {
  if (work.empty()) {
    classical_gemm(a, b, c);
    return;
  }
  const Index m = a.rows / 2, k = a.cols / 2, n = b.cols / 2;
  auto a11 = a.block(0, 0, m, k), a12 = a.block(0, k, m, k);
  auto a21 = a.block(m, 0, m, k), a22 = a.block(m, k, m, k);
  auto b11 = b.block(0, 0, k, n), b12 = b.block(0, n, k, n);
  auto b21 = b.block(k, 0, k, n), b22 = b.block(k, n, k, n);
  auto c11 = c.block(0, 0, m, n), c12 = c.block(0, n, m, n);
  auto c21 = c.block(m, 0, m, n), c22 = c.block(m, n, m, n);

  StrassenLevel& lv = work.front();
  auto rest = work.subspan(1);
  MatrixView ta = lv.ta.view(), tb = lv.tb.view(), p = lv.p.view();

  combine(a11, a22, 1.0, ta);
  combine(b11, b22, 1.0, tb);
  strassen_rec(ta, tb, p, rest);
  assign(c11, p);
  assign(c22, p);

  combine(a21, a22, 1.0, ta);
  strassen_rec(ta, b11, p, rest);
  assign(c21, p);
  accumulate(c22, p, -1.0);

  combine(b12, b22, -1.0, tb);
  strassen_rec(a11, tb, p, rest);
  assign(c12, p);
  accumulate(c22, p, 1.0);

  combine(b21, b11, -1.0, tb);
  strassen_rec(a22, tb, p, rest);
  accumulate(c11, p, 1.0);
  accumulate(c21, p, 1.0);

  combine(a11, a12, 1.0, ta);
  strassen_rec(ta, b22, p, rest);
  accumulate(c11, p, -1.0);
  accumulate(c12, p, 1.0);

  combine(a21, a11, -1.0, ta);
  combine(b11, b12, 1.0, tb);
  strassen_rec(ta, tb, p, rest);
  accumulate(c22, p, 1.0);

  combine(a12, a22, -1.0, ta);
  combine(b21, b22, 1.0, tb);
  strassen_rec(ta, tb, p, rest);
  accumulate(c11, p, 1.0);
}

Index round_up(Index x, Index multiple) { return (x + multiple - 1) / multiple * multiple; }

void strassen_gemm(ConstMatrixView a, ConstMatrixView b, MatrixView c, Index cutoff) {
  const Index smallest = std::min({a.rows, a.cols, b.cols});
  int levels = 0;
  while ((smallest + (Index{1} << levels) - 1) >> levels > std::max<Index>(cutoff, 1)) ++levels;
  if (levels == 0) {
    classical_gemm(a, b, c);
    return;
  }
  const Index block = Index{1} << levels;
  const Index mp = round_up(a.rows, block), kp = round_up(a.cols, block), np = round_up(b.cols, block);

  std::vector<StrassenLevel> work(levels);
  for (int l = 0; l < levels; ++l) {
    const Index s = Index{2} << l;
    work[l].ta = DenseMatrix(mp / s, kp / s);
    work[l].tb = DenseMatrix(kp / s, np / s);
    work[l].p = DenseMatrix(mp / s, np / s);
  }

  if (mp == a.rows && kp == a.cols && np == b.cols) {
    strassen_rec(a, b, c, work);
    return;
  }
  DenseMatrix ap(mp, kp), bp(kp, np), cp(mp, np);
  assign(ap.view().block(0, 0, a.rows, a.cols), a);
  assign(bp.view().block(0, 0, b.rows, b.cols), b);
  strassen_rec(ap.view(), bp.view(), cp.view(), work);
  assign(c, cp.view().block(0, 0, c.rows, c.cols));
}

}  // namespace

void gemm(ConstMatrixView a, ConstMatrixView b, MatrixView c, const MatmulStrategy& strategy) {
  require(a.cols == b.rows && c.rows == a.rows && c.cols == b.cols, ErrorCode::dimension_mismatch,
          "gemm operand shapes disagree");
  if (strategy.kind == MatmulStrategy::Kind::strassen)
    strassen_gemm(a, b, c, strategy.cutoff);
  else
    classical_gemm(a, b, c);
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b, const MatmulStrategy& strategy) {
  require(a.cols() == b.rows(), ErrorCode::dimension_mismatch, "matmul inner extents disagree");
  DenseMatrix c(a.rows(), b.cols());
  gemm(a.view(), b.view(), c.view(), strategy);
  return c;
}

DenseMatrix kron2_apply(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& x,
                        const MatmulStrategy& strategy) {
  require(b.cols() == x.rows() && a.cols() == x.cols(), ErrorCode::dimension_mismatch,
          "kron2_apply factor shapes disagree with X");
  DenseMatrix bx = matmul(b, x, strategy);
  return matmul(bx, a.transposed(), strategy);
}

Tensor3 kron3_apply(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& c,
                    const Tensor3& t, const MatmulStrategy& strategy) {
  const auto [n1, n2, n3] = t.dims();
  require(c.cols() == n1 && b.cols() == n2 && a.cols() == n3, ErrorCode::dimension_mismatch,
          "kron3_apply factor shapes disagree with T");
  const Index r1 = c.rows(), r2 = b.rows(), r3 = a.rows();

  // axis 0: unfold T as n1 × (n2 n3)
  Tensor3 s1(r1, n2, n3);
  gemm(c.view(), ConstMatrixView{t.data(), n1, n2 * n3, n1}, MatrixView{s1.data(), r1, n2 * n3, r1},
       strategy);

  // axis 1: each axis-2 slab is r1 × n2
  Tensor3 s2(r1, r2, n3);
  const DenseMatrix bt = b.transposed();
  parallel_for(n3, [&](Index begin, Index end, int) {
    for (Index k = begin; k < end; ++k)
      gemm(ConstMatrixView{s1.data() + k * r1 * n2, r1, n2, r1}, bt.view(),
           MatrixView{s2.data() + k * r1 * r2, r1, r2, r1}, strategy);
  });

  // axis 2: unfold as (r1 r2) × n3
  Tensor3 out(r1, r2, r3);
  const DenseMatrix at = a.transposed();
  gemm(ConstMatrixView{s2.data(), r1 * r2, n3, r1 * r2}, at.view(),
       MatrixView{out.data(), r1 * r2, r3, r1 * r2}, strategy);
  return out;
}

void apply_cube_inplace(TensorView3 t, const DenseMatrix& op, const DenseMatrix& op_t,
                        const MatmulStrategy& strategy) {
  const Index n = op.rows();
  require(op.cols() == n && t.n1 == n && t.n2 == n && t.n3 == n, ErrorCode::dimension_mismatch,
          "apply_cube_inplace needs a cube matching op");
  if (n == 0) return;
  const int workers = std::max(1, num_threads());
  std::vector<DenseMatrix> buffers(workers, DenseMatrix(n, n));

  auto copy_back = [n](const DenseMatrix& buf, MatrixView dst) {
    for (Index j = 0; j < n; ++j) std::copy_n(buf.data() + j * n, n, dst.data + j * dst.ld);
  };

  // axis 0: slab k is n × n with column stride ld1; Y = op · X
  parallel_for(n, [&](Index begin, Index end, int w) {
    for (Index k = begin; k < end; ++k) {
      MatrixView slab{t.data + k * t.ld2, n, n, t.ld1};
      gemm(op.view(), slab, buffers[w].view(), strategy);
      copy_back(buffers[w], slab);
    }
  });
  // axis 1: Y = X · opᵀ on the same slabs
  parallel_for(n, [&](Index begin, Index end, int w) {
    for (Index k = begin; k < end; ++k) {
      MatrixView slab{t.data + k * t.ld2, n, n, t.ld1};
      gemm(slab, op_t.view(), buffers[w].view(), strategy);
      copy_back(buffers[w], slab);
    }
  });
  // axis 2: slab j holds (i, k) with column stride ld2
  parallel_for(n, [&](Index begin, Index end, int w) {
    for (Index j = begin; j < end; ++j) {
      MatrixView slab{t.data + j * t.ld1, n, n, t.ld2};
      gemm(slab, op_t.view(), buffers[w].view(), strategy);
      copy_back(buffers[w], slab);
    }
  });
}

namespace {

Index selected_extent(Index n, Selector s) { return s == Selector::first ? 1 : n - 1; }
Index selected_offset(Selector s) { return s == Selector::first ? 0 : 1; }

void check_axis(int axis, int rank) {
  require(axis >= 0 && axis < rank, ErrorCode::dimension_mismatch, "axis out of range");
}

}  // namespace

DenseMatrix restrict_first(const DenseMatrix& x, int axis, Selector s) {
  check_axis(axis, 2);
  const Index n = axis == 0 ? x.rows() : x.cols();
  require(n >= 1, ErrorCode::dimension_mismatch, "cannot restrict an empty axis");
  const Index len = selected_extent(n, s), off = selected_offset(s);
  if (axis == 0) return DenseMatrix::from_view(x.view().block(off, 0, len, x.cols()));
  return DenseMatrix::from_view(x.view().block(0, off, x.rows(), len));
}

DenseMatrix extend_first(const DenseMatrix& x, int axis, Selector s, Index full_extent) {
  check_axis(axis, 2);
  const Index have = axis == 0 ? x.rows() : x.cols();
  require(full_extent >= 1 && have == selected_extent(full_extent, s),
          ErrorCode::dimension_mismatch, "extend_first extent mismatch");
  const Index off = selected_offset(s);
  DenseMatrix out(axis == 0 ? full_extent : x.rows(), axis == 1 ? full_extent : x.cols());
  MatrixView dst = axis == 0 ? out.view().block(off, 0, have, x.cols())
                             : out.view().block(0, off, x.rows(), have);
  assign(dst, x.view());
  return out;
}

Tensor3 restrict_first(const Tensor3& t, int axis, Selector s) {
  check_axis(axis, 3);
  require(t.dim(axis) >= 1, ErrorCode::dimension_mismatch, "cannot restrict an empty axis");
  Tensor3::Dims d = t.dims();
  const Index off = selected_offset(s);
  d[axis] = selected_extent(d[axis], s);
  Tensor3 out(d);
  for (Index k = 0; k < d[2]; ++k)
    for (Index j = 0; j < d[1]; ++j)
      for (Index i = 0; i < d[0]; ++i)
        out(i, j, k) = t(i + (axis == 0 ? off : 0), j + (axis == 1 ? off : 0), k + (axis == 2 ? off : 0));
  return out;
}

Tensor3 extend_first(const Tensor3& t, int axis, Selector s, Index full_extent) {
  check_axis(axis, 3);
  require(full_extent >= 1 && t.dim(axis) == selected_extent(full_extent, s),
          ErrorCode::dimension_mismatch, "extend_first extent mismatch");
  Tensor3::Dims d = t.dims();
  const Index off = selected_offset(s);
  d[axis] = full_extent;
  Tensor3 out(d);
  const auto& src = t.dims();
  for (Index k = 0; k < src[2]; ++k)
    for (Index j = 0; j < src[1]; ++j)
      for (Index i = 0; i < src[0]; ++i)
        out(i + (axis == 0 ? off : 0), j + (axis == 1 ? off : 0), k + (axis == 2 ? off : 0)) = t(i, j, k);
  return out;
}

}  // namespace curlspec
