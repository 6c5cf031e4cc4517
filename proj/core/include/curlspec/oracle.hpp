// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "curlspec/tensorops.hpp"

namespace curlspec::oracle {

inline constexpr Index default_cap_2d = 16;
inline constexpr Index default_cap_3d = 8;

/// Block order of the dense unknown vector. Every block is a column-major vec.
struct DofLayout {
  int dim = 2;
  Index N = 0;
  std::vector<std::string> names;
  std::vector<Index> sizes;

  Index total() const noexcept;
};

struct DensePencil {
  DenseMatrix A;
  std::optional<DenseMatrix> B;  ///< present for eigen pencils
  DofLayout layout;
};

/// Saddle-point source systems over (u, v[, w], p).
DensePencil assemble_dense_2d(double kappa, Index N, Index cap = default_cap_2d);
DensePencil assemble_dense_3d(double kappa, Index N, Index cap = default_cap_3d);
/// Curl-curl eigen pencils over (u, v[, w]).
DensePencil assemble_pencil_2d(Index N, Index cap = default_cap_2d);
DensePencil assemble_pencil_3d(Index N, Index cap = default_cap_3d);

std::vector<double> dense_solve(const DensePencil& p, std::span<const double> rhs);

struct DenseEigen {
  std::vector<double> values;  ///< ascending
  DenseMatrix vectors;         ///< empty unless requested
};

DenseEigen dense_eig(const DensePencil& p, bool want_vectors = false);

/// y = A x for a dense operator.
std::vector<double> apply(const DenseMatrix& a, std::span<const double> x);

}  // namespace curlspec::oracle
