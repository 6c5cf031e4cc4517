// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "curlspec/tensorops.hpp"

namespace curlspec {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  Index order() const noexcept { return static_cast<Index>(nodes.size()); }
};

/// n-point Gauss–Legendre rule on (-1, 1), nodes ascending.
QuadratureRule gauss_legendre(Index n);

/// Legendre polynomial L_n(x).
double legendre(Index n, double x);

/// φ_m = sqrt((2m+1)/2) L_m, m ≥ 0.
double phi(Index m, double x);
/// ψ_{m+1} = (L_{m+1} − L_{m−1}) / sqrt(2(2m+1)), m ≥ 1.
double psi(Index m, double x);

/// Rows are modes, columns are points.
///   phi  : n_max rows, row m ↔ φ_m, m = 0..n_max−1
///   psi  : n_max−1 rows, row m−1 ↔ ψ_{m+1}, m = 1..n_max−1
///   dpsi : as psi, holding ψ'_{m+1}
///   dphi : as phi, holding φ'_m
struct BasisTable {
  Index n_max = 0;
  DenseMatrix phi;
  DenseMatrix psi;
  DenseMatrix dpsi;
  DenseMatrix dphi;
};

BasisTable basis_table(Index n_max, std::span<const double> points);

}  // namespace curlspec
