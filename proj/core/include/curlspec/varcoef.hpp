// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "curlspec/assembly.hpp"
#include "curlspec/fields.hpp"
#include "curlspec/massmat.hpp"

namespace curlspec {

struct KrylovConfig {
  Index restart = 50;
  Index max_iterations = 1000;
  double tolerance = 1e-10;
};

/// Matrix-free Galerkin action of ∇×(α∇×u) + κu with the multiplier
/// coupling, on stacked (vec U, vec V, vec P) vectors.
class VarCoefOperator {
 public:
  VarCoefOperator(ScalarField alpha, Index N, double kappa, Index quad_extra = 2);

  Index order() const noexcept { return N_; }
  Index size() const noexcept;
  double kappa() const noexcept { return kappa_; }
  /// Domain average of α (quadrature), used by the preconditioner.
  double mean_alpha() const noexcept { return mean_alpha_; }
  const DenseMatrix& alpha_samples() const noexcept { return alpha_; }
  const MassDecomp& decomposition() const noexcept { return *dec_; }

  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(std::span<const double> x) const;

 private:
  Index N_;
  double kappa_;
  DenseMatrix alpha_;     ///< α at the quadrature grid
  DenseMatrix weighted_;  ///< α w_a w_b
  DenseMatrix phi_, phi_t_;
  MassMatrix mass_;
  std::shared_ptr<const MassDecomp> dec_;
  double mean_alpha_ = 1.0;
};

std::vector<double> apply_operator(const VarCoefOperator& op, std::span<const double> x);

struct VarCoefResult {
  SpectralField2D field;
  Index iterations = 0;
  std::vector<double> residual_history;  ///< relative residual, one entry per iteration plus the start
  bool converged = false;
};

/// Restarted GMRES, right-preconditioned by the constant-coefficient fast
/// solve at α = mean_alpha(). On failure to converge the best iterate is
/// returned with converged = false.
VarCoefResult solve_varcoef(const VarCoefOperator& op, const SourceData2D& src,
                            const KrylovConfig& cfg = {});

/// Generic restarted right-preconditioned GMRES on x ↦ A x.
using LinearMap = std::function<void(std::span<const double>, std::span<double>)>;

struct GmresResult {
  std::vector<double> x;
  Index iterations = 0;
  std::vector<double> history;
  bool converged = false;
};

GmresResult gmres(const LinearMap& a, const LinearMap& precond, std::span<const double> b,
                  const KrylovConfig& cfg);

}  // namespace curlspec
