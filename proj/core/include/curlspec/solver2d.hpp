// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "curlspec/fields.hpp"
#include "curlspec/massmat.hpp"
#include "curlspec/tensorops.hpp"

namespace curlspec {

/// Relative distance below which −κ is treated as a discrete eigenvalue.
inline constexpr double resonance_tolerance = 1e-12;

struct SolveOptions {
  MatmulStrategy strategy{};
};

struct GaussResidual {
  double absolute = 0.0;  ///< max-norm of the constraint defect
  /// Normwise size of the terms, ‖U¹‖‖M‖ + ‖M‖‖U²‖ + ‖R‖ in max/∞ norms
  /// (3D: each field term carries ‖M‖²).
  double scale = 0.0;
  /// max of |U¹||M| + |M||U²| + |R| entrywise; a stricter yardstick that
  /// ignores rounding spread by the dense eigenbasis transforms.
  double componentwise_scale = 0.0;
  double relative() const noexcept { return scale > 0.0 ? absolute / scale : absolute; }
  double componentwise_relative() const noexcept {
    return componentwise_scale > 0.0 ? absolute / componentwise_scale : absolute;
  }
};

struct Solve2DReport {
  double gauss_residual = 0.0;           ///< ‖U¹M + MU² − R‖_max
  double gauss_residual_relative = 0.0;  ///< GaussResidual::relative()
  double resonance_margin = 0.0;         ///< min over eigenvalues λ of |κ + λ| / (1 + |κ|)
  double wall_time_s = 0.0;
};

struct Solve2DResult {
  SpectralField2D field;
  Solve2DReport report;
};

Solve2DResult solve_source_2d(const SourceData2D& src, double kappa, const MassDecomp& dec,
                              const SolveOptions& options = {});

GaussResidual gauss_residual_terms_2d(const SpectralField2D& field, const SourceData2D& src,
                                      const MassMatrix& m);
double gauss_residual_2d(const SpectralField2D& field, const SourceData2D& src, const MassMatrix& m);

double resonance_margin_2d(double kappa, const MassDecomp& dec);

}  // namespace curlspec
