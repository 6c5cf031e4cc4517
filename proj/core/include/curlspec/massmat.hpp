// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "curlspec/tensorops.hpp"

namespace curlspec {

/// Gram matrix of ψ_2, ..., ψ_N. Storage row r corresponds to n = r + 1.
struct MassMatrix {
  Index size = 0;
  std::vector<double> diag;      ///< M(r, r)
  std::vector<double> offdiag2;  ///< M(r, r+2), length max(size − 2, 0)

  double operator()(Index r, Index c) const noexcept;
  DenseMatrix dense() const;
  double max_row_sum() const noexcept;
};

MassMatrix build_mass_matrix(Index N);

/// y = M x (left) or y = x M (right) using the banded structure.
void mass_multiply_left(const MassMatrix& m, ConstMatrixView x, MatrixView y);
void mass_multiply_right(const MassMatrix& m, ConstMatrixView x, MatrixView y);

enum class EigenvectorPolicy { compute, skip };

struct MassDecomp {
  std::vector<double> d;  ///< ascending
  DenseMatrix Q;          ///< columns are eigenvectors; empty when skipped

  Index size() const noexcept { return static_cast<Index>(d.size()); }
  /// Polynomial order N the decomposition belongs to.
  Index order() const noexcept { return size() + 1; }
  bool has_vectors() const noexcept { return !Q.empty() || d.empty(); }
};

MassDecomp decompose_mass(const MassMatrix& m, EigenvectorPolicy policy = EigenvectorPolicy::compute);

}  // namespace curlspec
