// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>

#include "curlspec/fields.hpp"
#include "curlspec/massmat.hpp"
#include "curlspec/solver2d.hpp"
#include "curlspec/tensorops.hpp"

namespace curlspec {

struct Solve3DReport {
  double gauss_residual = 0.0;
  double gauss_residual_relative = 0.0;
  double resonance_margin = 0.0;
  double wall_time_s = 0.0;
  /// True when the residual was measured on the transformed coefficients
  /// (the consuming overload no longer holds R).
  bool residual_in_transformed_basis = false;
};

struct Solve3DResult {
  SpectralField3D field;
  Solve3DReport report;
};

Solve3DResult solve_source_3d(const SourceData3D& src, double kappa, const MassDecomp& dec,
                              const SolveOptions& options = {});
/// Consumes src and reuses its storage for the result, so peak memory is a
/// single copy of the data.
Solve3DResult solve_source_3d(SourceData3D&& src, double kappa, const MassDecomp& dec,
                              const SolveOptions& options = {});

GaussResidual gauss_residual_terms_3d(const SpectralField3D& field, const SourceData3D& src,
                                      const MassMatrix& m);
double gauss_residual_3d(const SpectralField3D& field, const SourceData3D& src, const MassMatrix& m);

double resonance_margin_3d(double kappa, const MassDecomp& dec);

namespace detail {

/// Interior mode (i, j, k) in the eigenbasis: returns (Û¹, Û², Û³, P̂).
inline std::array<double, 4> solve_interior_mode(double di, double dj, double dk, double kappa,
                                                 double f1, double f2, double f3, double r) {
  const double s2 = dj * dk + di * dk + di * dj;
  const double d3 = di * dj * dk;
  const double p = (f1 + f2 + f3 - kappa * r) / s2;
  const double den = s2 + kappa * d3;
  return {(r + di * f1 - d3 * p) / den, (r + dj * f2 - d3 * p) / den, (r + dk * f3 - d3 * p) / den, p};
}

}  // namespace detail
}  // namespace curlspec
