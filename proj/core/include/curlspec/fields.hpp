// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "curlspec/tensorops.hpp"

namespace curlspec {

/// Projected right-hand side in 2D.
///   F : N × (N−1),  f_mn = (f, Φ¹_mn)
///   G : (N−1) × N,  g_mn = (f, Φ²_mn)
///   R : (N−1) × (N−1), r_mn = −(ρ, Ψ_mn)
struct SourceData2D {
  DenseMatrix F, G, R;

  static SourceData2D zeros(Index N);
  Index order() const noexcept { return F.rows(); }
};

struct SourceData3D {
  Tensor3 F;  ///< N × (N−1) × (N−1)
  Tensor3 G;  ///< (N−1) × N × (N−1)
  Tensor3 H;  ///< (N−1) × (N−1) × N
  Tensor3 R;  ///< (N−1)³

  static SourceData3D zeros(Index N);
  Index order() const noexcept { return F.dim(0); }
};

/// Coefficients of u_N on Φ¹ (U) and Φ² (V), plus the multiplier P.
struct SpectralField2D {
  DenseMatrix U;  ///< N × (N−1)
  DenseMatrix V;  ///< (N−1) × N
  std::optional<DenseMatrix> P;

  static SpectralField2D zeros(Index N, bool with_p = false);
  Index order() const noexcept { return U.rows(); }
};

struct SpectralField3D {
  Tensor3 U, V, W;
  std::optional<Tensor3> P;

  static SpectralField3D zeros(Index N, bool with_p = false);
  Index order() const noexcept { return U.dim(0); }
};

void check_shapes(const SourceData2D& s, Index N);
void check_shapes(const SourceData3D& s, Index N);
void check_shapes(const SpectralField2D& f, Index N);
void check_shapes(const SpectralField3D& f, Index N);

/// Unknown counts in the stacked (u, v[, w], p) ordering.
Index stacked_size_2d(Index N) noexcept;
Index stacked_size_3d(Index N) noexcept;

/// Stacking follows vec(U), vec(V)[, vec(W)], vec(P). A missing P is zero.
std::vector<double> stack(const SpectralField2D& f);
std::vector<double> stack(const SpectralField3D& f);
std::vector<double> stack(const SourceData2D& s);
std::vector<double> stack(const SourceData3D& s);
SpectralField2D unstack_field_2d(std::span<const double> x, Index N);
SpectralField3D unstack_field_3d(std::span<const double> x, Index N);
SourceData2D unstack_source_2d(std::span<const double> x, Index N);
SourceData3D unstack_source_3d(std::span<const double> x, Index N);

}  // namespace curlspec
