// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "curlspec/fields.hpp"
#include "curlspec/tensorops.hpp"

namespace curlspec {

using Point = std::array<double, 3>;
using Vec3 = std::array<double, 3>;
using VectorField = std::function<Vec3(const Point&)>;
using ScalarField = std::function<double(const Point&)>;

/// Problem data for ∇×∇×u + κu = f, ∇·u = ρ, n×u = b on the boundary.
/// In 2D only the first two coordinates and components are used, and b is
/// the scalar tangential trace n₁u₂ − n₂u₁.
struct ProblemSpec {
  int dim = 2;
  Index N = 8;
  double kappa = 1.0;
  VectorField f;
  ScalarField rho;
  ScalarField b;
  ScalarField alpha;
  Index quad_extra = 2;

  Index quadrature_order() const noexcept { return N + quad_extra; }
};

void validate(const ProblemSpec& spec);

SourceData2D assemble_source_2d(const ProblemSpec& spec);
SourceData3D assemble_source_3d(const ProblemSpec& spec);

/// Lifting of 2D tangential boundary data onto hat functions in the normal
/// direction and φ_m along each edge.
struct BoundaryLift2D {
  Index N = 0;
  std::vector<double> b1, b2, b3, b4;  ///< edges x₁ = −1, x₁ = 1, x₂ = −1, x₂ = 1

  Vec3 value(const Point& x) const;
  /// Scalar curl ∂₁u₂ − ∂₂u₁ in the third component.
  Vec3 curl(const Point& x) const;
  Vec3 curl_curl(const Point& x) const;
  double div(const Point& x) const;
  bool is_zero() const noexcept;
};

struct LiftResult {
  std::shared_ptr<const BoundaryLift2D> lift;
  ProblemSpec modified;  ///< homogeneous problem for u − u_b
};

LiftResult lift_boundary_2d(const ProblemSpec& spec);

struct TensorGrid {
  std::vector<double> x, y, z;
};

struct FieldSamples2D {
  DenseMatrix u1, u2;  ///< x.size() × y.size()
  DenseMatrix curl;
  DenseMatrix div;
};

struct FieldSamples3D {
  Tensor3 u1, u2, u3;
  Tensor3 c1, c2, c3;
  Tensor3 div;
};

struct EvalOptions {
  bool curl = false;
  bool div = false;
};

FieldSamples2D evaluate_field(const SpectralField2D& f, const TensorGrid& g, EvalOptions opt = {});
FieldSamples3D evaluate_field(const SpectralField3D& f, const TensorGrid& g, EvalOptions opt = {});

/// Per-point evaluation for scattered points; returns u (2D: third entry 0).
Vec3 evaluate_at(const SpectralField2D& f, const Point& x);
Vec3 evaluate_at(const SpectralField3D& f, const Point& x);

struct ExactSolution {
  VectorField u;
  VectorField curl;  ///< 2D: scalar curl in the third component
};

struct FieldError {
  double l2 = 0.0;
  double curl_l2 = 0.0;
  double hcurl() const noexcept;
};

/// Norms by tensor Gauss quadrature with `points` nodes per axis
/// (0 selects 2N + 8).
FieldError field_error(const SpectralField2D& f, const ExactSolution& exact, Index points = 0);
FieldError field_error(const SpectralField3D& f, const ExactSolution& exact, Index points = 0);
FieldError field_difference(const SpectralField2D& a, const SpectralField2D& b, Index points = 0);
FieldError field_difference(const SpectralField3D& a, const SpectralField3D& b, Index points = 0);

}  // namespace curlspec
