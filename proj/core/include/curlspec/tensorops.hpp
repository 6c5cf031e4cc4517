// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace curlspec {

using Index = std::ptrdiff_t;

/// Non-owning column-major view. Element (i, j) lives at data[i + j * ld].
struct ConstMatrixView {
  const double* data = nullptr;
  Index rows = 0;
  Index cols = 0;
  Index ld = 0;

  double operator()(Index i, Index j) const noexcept { return data[i + j * ld]; }
  ConstMatrixView block(Index i, Index j, Index r, Index c) const noexcept {
    return {data + i + j * ld, r, c, ld};
  }
};

struct MatrixView {
  double* data = nullptr;
  Index rows = 0;
  Index cols = 0;
  Index ld = 0;

  double& operator()(Index i, Index j) const noexcept { return data[i + j * ld]; }
  MatrixView block(Index i, Index j, Index r, Index c) const noexcept {
    return {data + i + j * ld, r, c, ld};
  }
  operator ConstMatrixView() const noexcept { return {data, rows, cols, ld}; }
};

class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(Index rows, Index cols, double value = 0.0);

  static DenseMatrix identity(Index n);
  /// Copies out a strided view.
  static DenseMatrix from_view(ConstMatrixView v);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  Index size() const noexcept { return rows_ * cols_; }
  bool empty() const noexcept { return values_.empty(); }

  double& operator()(Index i, Index j) noexcept { return values_[i + j * rows_]; }
  double operator()(Index i, Index j) const noexcept { return values_[i + j * rows_]; }

  double* data() noexcept { return values_.data(); }
  const double* data() const noexcept { return values_.data(); }
  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  MatrixView view() noexcept { return {values_.data(), rows_, cols_, rows_}; }
  ConstMatrixView view() const noexcept { return {values_.data(), rows_, cols_, rows_}; }

  DenseMatrix transposed() const;
  double max_abs() const noexcept;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<double> values_;
};

/// Third-order tensor, first index fastest, matching the column-major vec order.
class Tensor3 {
 public:
  using Dims = std::array<Index, 3>;

  Tensor3() = default;
  Tensor3(Index n1, Index n2, Index n3, double value = 0.0);
  explicit Tensor3(Dims dims, double value = 0.0) : Tensor3(dims[0], dims[1], dims[2], value) {}

  const Dims& dims() const noexcept { return dims_; }
  Index dim(int axis) const noexcept { return dims_[axis]; }
  Index size() const noexcept { return dims_[0] * dims_[1] * dims_[2]; }
  bool empty() const noexcept { return values_.empty(); }

  double& operator()(Index i, Index j, Index k) noexcept {
    return values_[i + dims_[0] * (j + dims_[1] * k)];
  }
  double operator()(Index i, Index j, Index k) const noexcept {
    return values_[i + dims_[0] * (j + dims_[1] * k)];
  }

  double* data() noexcept { return values_.data(); }
  const double* data() const noexcept { return values_.data(); }
  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  double max_abs() const noexcept;
  /// Releases the storage (used by in-place solvers to hand buffers over).
  std::vector<double> release() noexcept;
  static Tensor3 adopt(Dims dims, std::vector<double>&& values);

 private:
  Dims dims_{0, 0, 0};
  std::vector<double> values_;
};

/// Strided 3-tensor view with unit stride along axis 0. Element (i, j, k)
/// lives at data[i + j * ld1 + k * ld2].
struct TensorView3 {
  double* data = nullptr;
  Index n1 = 0, n2 = 0, n3 = 0;
  Index ld1 = 0, ld2 = 0;

  double& operator()(Index i, Index j, Index k) const noexcept {
    return data[i + j * ld1 + k * ld2];
  }
  static TensorView3 of(Tensor3& t) noexcept {
    return {t.data(), t.dim(0), t.dim(1), t.dim(2), t.dim(0), t.dim(0) * t.dim(1)};
  }
};

std::vector<double> vec(const DenseMatrix& x);
std::vector<double> vec(const Tensor3& t);
DenseMatrix ivec(std::span<const double> v, Index rows, Index cols);
Tensor3 ivec(std::span<const double> v, Tensor3::Dims dims);

struct MatmulStrategy {
  enum class Kind { classical, strassen };
  Kind kind = Kind::classical;
  Index cutoff = 64;

  static MatmulStrategy classical() { return {}; }
  static MatmulStrategy strassen(Index cutoff = 64) { return {Kind::strassen, cutoff}; }
};

/// c = a * b. The output must not alias either input.
void gemm(ConstMatrixView a, ConstMatrixView b, MatrixView c,
          const MatmulStrategy& strategy = {});
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b,
                   const MatmulStrategy& strategy = {});

/// (A ⊗ B) vec(X) reshaped, i.e. B X Aᵀ.
DenseMatrix kron2_apply(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& x,
                        const MatmulStrategy& strategy = {});
/// (A ⊗ B ⊗ C) vec(T) reshaped: C acts on axis 0, B on axis 1, A on axis 2.
Tensor3 kron3_apply(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& c,
                    const Tensor3& t, const MatmulStrategy& strategy = {});

/// Overwrites t with (op ⊗ op ⊗ op) vec(t). op must be n×n with n equal to
/// every extent of t. op_t is its transpose.
void apply_cube_inplace(TensorView3 t, const DenseMatrix& op, const DenseMatrix& op_t,
                        const MatmulStrategy& strategy = {});

/// Selector along one axis: `first` is e₁ᵀ (keeps index 0), `rest` is E
/// (drops index 0).
enum class Selector { first, rest };

DenseMatrix restrict_first(const DenseMatrix& x, int axis, Selector s);
DenseMatrix extend_first(const DenseMatrix& x, int axis, Selector s, Index full_extent);
Tensor3 restrict_first(const Tensor3& t, int axis, Selector s);
Tensor3 extend_first(const Tensor3& t, int axis, Selector s, Index full_extent);

}  // namespace curlspec
