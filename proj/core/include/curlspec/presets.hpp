// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curlspec/assembly.hpp"
#include "curlspec/solver2d.hpp"
#include "curlspec/varcoef.hpp"

namespace curlspec {

enum class PresetKind { source, variable_coefficient, eigen };
enum class ReferencePolicy { exact, self_convergence, none };

struct PresetParams {
  Index N = 16;
  std::optional<double> kappa;
  std::optional<double> sigma;
  std::optional<double> gamma;
  std::optional<Index> quad_extra;

  static PresetParams at(Index N, std::optional<double> kappa = std::nullopt) {
    PresetParams p;
    p.N = N;
    p.kappa = kappa;
    return p;
  }
};

struct Preset {
  std::string name;
  std::string description;
  int dim = 2;  ///< 0 for dimension-agnostic eigen studies
  PresetKind kind = PresetKind::source;
  double default_kappa = 1.0;
  std::optional<double> sigma;
  std::optional<double> gamma;
  /// Extra quadrature points. Empty marks a sharp source: q = max(2N, ⌈4/σ⌉)
  /// so that both the basis and the Gaussian width are resolved.
  std::optional<Index> default_quad_extra = 2;
  ReferencePolicy reference = ReferencePolicy::exact;
  Index reference_N = 0;  ///< suggested reference order for self-convergence

  std::function<ProblemSpec(const PresetParams&)> make;
  /// Exact solution for the given κ; empty unless reference == exact.
  std::function<ExactSolution(double kappa)> exact;

  Index quad_extra_for(Index N, std::optional<double> sigma_override = std::nullopt) const noexcept {
    if (default_quad_extra) return *default_quad_extra;
    const double w = sigma_override.value_or(sigma.value_or(0.0));
    const Index resolve = w > 0.0 ? static_cast<Index>(std::ceil(4.0 / w)) : 0;
    return std::max(N, resolve - N);
  }
};

Preset get_preset(std::string_view name);
std::vector<std::string> preset_names();

/// Outcome of solving a source or variable-coefficient preset. For a lifted
/// problem `field` holds the homogeneous part; the full solution is field + lift.
struct PresetSolve {
  int dim = 2;
  Index N = 0;
  double kappa = 0.0;
  std::optional<SpectralField2D> field2;
  std::optional<SpectralField3D> field3;
  std::shared_ptr<const BoundaryLift2D> lift;
  double gauss_residual_relative = 0.0;
  Index iterations = 0;  ///< GMRES iterations (variable coefficient only)
  std::vector<double> residual_history;
  bool converged = true;
  double wall_time_s = 0.0;
};

PresetSolve solve_preset(const Preset& preset, const PresetParams& params,
                         const SolveOptions& options = {}, const KrylovConfig& krylov = {});

/// Error against the exact solution (lift included); empty without one.
std::optional<FieldError> preset_error(const Preset& preset, const PresetSolve& s);

/// Difference of two solves of the same preset at different orders.
FieldError preset_difference(const PresetSolve& a, const PresetSolve& reference);

namespace presets {

/// Coefficient of the ex5_3 preset: tanh bumps of width γ.
double tanh_bump_alpha(double x1, double x2, double gamma);

}  // namespace presets
}  // namespace curlspec
