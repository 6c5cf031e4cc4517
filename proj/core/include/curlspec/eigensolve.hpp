// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <span>
#include <vector>

#include "curlspec/fields.hpp"
#include "curlspec/massmat.hpp"

namespace curlspec {

/// Category order is the tie-break rank used when sorting equal values.
enum class ModeCategory { gradient, interior, edge_x, edge_y, face_x, face_y, face_z };

const char* to_string(ModeCategory c) noexcept;

/// One discrete eigenpair. Indices follow the 1-based eigenvalue numbering
/// d_1 ≤ d_2 ≤ ... for interior/edge/face modes, with 0 marking the
/// edge/face direction. Gradient indices (i, j[, k]) ≥ 1 name ∇Ψ_{ij[k]}.
struct EigenMode {
  double value = 0.0;
  ModeCategory category = ModeCategory::interior;
  std::array<Index, 3> index{0, 0, 0};
  int branch = 0;  ///< 1 or 2 for 3D interior modes, otherwise 0
};

struct SpectrumSummary {
  std::vector<double> nonzero;  ///< ascending
  Index interior = 0;
  Index boundary = 0;  ///< edge (2D) or face (3D) modes
  Index gradient = 0;
  Index zero_multiplicity = 0;
};

struct Spectrum {
  std::vector<EigenMode> modes;  ///< ascending, gradient modes first
  SpectrumSummary summary;
};

Spectrum spectrum_2d(const MassDecomp& dec);
Spectrum spectrum_3d(const MassDecomp& dec);

/// Fast path returning only the sorted nonzero eigenvalues.
std::vector<double> nonzero_eigenvalues_2d(const MassDecomp& dec);
std::vector<double> nonzero_eigenvalues_3d(const MassDecomp& dec);

SpectralField2D eigenvector_2d(const EigenMode& mode, const MassDecomp& dec);
SpectralField3D eigenvector_3d(const EigenMode& mode, const MassDecomp& dec);

/// First `count` eigenvalues of the continuous problem on (−1, 1)^dim,
/// λ = (π²/4) k, with multiplicity.
std::vector<double> exact_spectrum(int dim, Index count);

/// Sorted-list pairing: entry q of `numeric` against entry q of `exact`.
double trusted_fraction(std::span<const double> numeric, std::span<const double> exact,
                        double rel_threshold);

/// Exact eigenvalue of the continuous mode a discrete mode resolves. The
/// 1D index i (ascending d) carries wavenumber N − i, so λ = (π²/4) Σ (N − i)².
/// Gradient modes map to 0.
double exact_mode_value(const EigenMode& mode, Index N);

/// Fraction of nonzero modes whose relative error against their own exact
/// eigenvalue is at most rel_threshold. Needs only the eigenvalues d.
double trusted_fraction_modes(int dim, const MassDecomp& dec, double rel_threshold);

}  // namespace curlspec
