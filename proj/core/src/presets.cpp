// SPDX-License-Identifier: Apache-2.0
#include "curlspec/presets.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "curlspec/error.hpp"
#include "curlspec/massmat.hpp"
#include "curlspec/solver3d.hpp"

namespace curlspec {
namespace {

constexpr double pi = std::numbers::pi;

double gauss(double dx, double dy, double dz, double sigma) {
  return std::exp(-(dx * dx + dy * dy + dz * dz) / (sigma * sigma));
}

ProblemSpec base_spec(int dim, const PresetParams& p, const Preset& self) {
  ProblemSpec s;
  s.dim = dim;
  s.N = p.N;
  s.kappa = p.kappa.value_or(self.default_kappa);
  s.quad_extra = p.quad_extra.value_or(self.quad_extra_for(p.N, p.sigma));
  return s;
}

// Smooth divergence-free-in-curl example on the square.
Preset make_ex5_1() {
  Preset pr;
  pr.name = "ex5_1";
  pr.description = "2D smooth trigonometric solution, homogeneous trace";
  pr.dim = 2;
  pr.default_kappa = 100.0;
  pr.reference = ReferencePolicy::exact;
  pr.make = [pr](const PresetParams& p) {
    ProblemSpec s = base_spec(2, p, pr);
    const double k = s.kappa;
    s.f = [k](const Point& x) -> Vec3 {
      const double cx = std::cos(pi * x[0]), sx = std::sin(pi * x[0]);
      const double cy = std::cos(pi * x[1]), sy = std::sin(pi * x[1]);
      const double u1 = (cx + sx) * sy, u2 = sx * (-cy + sy);
      const double d2c = pi * pi * cx * (sy + cy) + pi * pi * (cx + sx) * sy;
      const double d1c = -pi * pi * sx * (-cy + sy) - pi * pi * (-sx + cx) * cy;
      return {d2c + k * u1, -d1c + k * u2, 0.0};
    };
    s.rho = [](const Point& x) {
      const double cx = std::cos(pi * x[0]), sx = std::sin(pi * x[0]);
      const double cy = std::cos(pi * x[1]), sy = std::sin(pi * x[1]);
      return pi * (cx - sx) * sy + pi * sx * (sy + cy);
    };
    return s;
  };
  pr.exact = [](double) {
    ExactSolution e;
    e.u = [](const Point& x) -> Vec3 {
      const double cx = std::cos(pi * x[0]), sx = std::sin(pi * x[0]);
      const double cy = std::cos(pi * x[1]), sy = std::sin(pi * x[1]);
      return {(cx + sx) * sy, sx * (-cy + sy), 0.0};
    };
    e.curl = [](const Point& x) -> Vec3 {
      const double cx = std::cos(pi * x[0]), sx = std::sin(pi * x[0]);
      const double cy = std::cos(pi * x[1]), sy = std::sin(pi * x[1]);
      return {0.0, 0.0, pi * cx * (-cy + sy) - pi * (cx + sx) * cy};
    };
    return e;
  };
  return pr;
}

// Curl of a pair of narrow Gaussians.
Preset make_ex5_2() {
  Preset pr;
  pr.name = "ex5_2";
  pr.description = "2D curl of two narrow Gaussians, self-convergence reference";
  pr.dim = 2;
  pr.default_kappa = -100.0;
  pr.sigma = 0.01;
  pr.default_quad_extra = std::nullopt;
  pr.reference = ReferencePolicy::self_convergence;
  pr.reference_N = 1024;
  pr.make = [pr](const PresetParams& p) {
    ProblemSpec s = base_spec(2, p, pr);
    const double sg = p.sigma.value_or(*pr.sigma);
    s.f = [sg](const Point& x) -> Vec3 {
      double d1 = 0.0, d2 = 0.0;
      for (double c : {-0.5, 0.5}) {
        const double g = gauss(x[0] - c, x[1], 0.0, sg);
        d1 += -2.0 * (x[0] - c) / (sg * sg) * g;
        d2 += -2.0 * x[1] / (sg * sg) * g;
      }
      return {d2, -d1, 0.0};
    };
    s.rho = [](const Point&) { return 0.0; };
    return s;
  };
  return pr;
}

// Variable coefficient with a lattice of tanh bumps.
Preset make_ex5_3() {
  Preset pr;
  pr.name = "ex5_3";
  pr.description = "2D variable coefficient with 25 tanh bumps";
  pr.dim = 2;
  pr.kind = PresetKind::variable_coefficient;
  pr.default_kappa = -400.0;
  pr.sigma = 0.05;
  pr.gamma = 0.04;
  pr.default_quad_extra = std::nullopt;
  pr.reference = ReferencePolicy::self_convergence;
  pr.reference_N = 300;
  pr.make = [pr](const PresetParams& p) {
    ProblemSpec s = base_spec(2, p, pr);
    const double sg = p.sigma.value_or(*pr.sigma);
    const double gm = p.gamma.value_or(*pr.gamma);
    const double k = s.kappa;
    s.f = [sg](const Point& x) -> Vec3 { return {gauss(x[0], x[1], 0.0, sg), 0.0, 0.0}; };
    s.rho = [sg, k](const Point& x) {
      return -2.0 * x[0] / (sg * sg) * gauss(x[0], x[1], 0.0, sg) / k;
    };
    s.alpha = [gm](const Point& x) { return presets::tanh_bump_alpha(x[0], x[1], gm); };
    return s;
  };
  return pr;
}

// Smooth 3D solution: divergence-free trigonometric part plus a bubble.
struct Ex54Parts {
  Vec3 t, ct, cct;
  Vec3 p, cp, ccp;
  double divp;
};

Ex54Parts ex5_4_parts(const Point& x) {
  constexpr double w = pi / 2.0;
  const double a = w * (x[0] + 1.0), b = w * (x[1] + 1.0), c = w * (x[2] + 1.0);
  const double ca = std::cos(a), sa = std::sin(a);
  const double cb = std::cos(b), sb = std::sin(b);
  const double cc = std::cos(c), sc = std::sin(c);
  Ex54Parts r;
  r.t = {2.0 * ca * sb * sc, -sa * cb * sc, -sa * sb * cc};
  r.ct = {0.0, 3.0 * w * ca * sb * cc, -3.0 * w * ca * cb * sc};
  for (int i = 0; i < 3; ++i) r.cct[i] = 3.0 * w * w * r.t[i];

  const double X = x[0] * x[0] - 1.0, Y = x[1] * x[1] - 1.0, Z = x[2] * x[2] - 1.0;
  const double p = X * Y * Z;
  const double d1 = 2.0 * x[0] * Y * Z, d2 = 2.0 * x[1] * X * Z, d3 = 2.0 * x[2] * X * Y;
  const double d11 = 2.0 * Y * Z, d22 = 2.0 * X * Z, d33 = 2.0 * X * Y;
  const double d12 = 4.0 * x[0] * x[1] * Z, d13 = 4.0 * x[0] * x[2] * Y;
  const double d23 = 4.0 * x[1] * x[2] * X;
  r.p = {p, p, p};
  r.cp = {d2 - d3, d3 - d1, d1 - d2};
  r.ccp = {d12 - d22 + d13 - d33, d12 - d11 + d23 - d33, d13 - d11 + d23 - d22};
  r.divp = d1 + d2 + d3;
  return r;
}

Preset make_ex5_4() {
  Preset pr;
  pr.name = "ex5_4";
  pr.description = "3D smooth trigonometric plus polynomial bubble solution";
  pr.dim = 3;
  pr.default_kappa = 100.0;
  pr.reference = ReferencePolicy::exact;
  pr.make = [pr](const PresetParams& p) {
    ProblemSpec s = base_spec(3, p, pr);
    const double k = s.kappa;
    s.f = [k](const Point& x) -> Vec3 {
      const Ex54Parts q = ex5_4_parts(x);
      Vec3 out;
      for (int i = 0; i < 3; ++i) out[i] = q.cct[i] + q.ccp[i] + k * (q.t[i] + q.p[i]);
      return out;
    };
    s.rho = [](const Point& x) { return ex5_4_parts(x).divp; };
    return s;
  };
  pr.exact = [](double) {
    ExactSolution e;
    e.u = [](const Point& x) -> Vec3 {
      const Ex54Parts q = ex5_4_parts(x);
      return {q.t[0] + q.p[0], q.t[1] + q.p[1], q.t[2] + q.p[2]};
    };
    e.curl = [](const Point& x) -> Vec3 {
      const Ex54Parts q = ex5_4_parts(x);
      return {q.ct[0] + q.cp[0], q.ct[1] + q.cp[1], q.ct[2] + q.cp[2]};
    };
    return e;
  };
  return pr;
}

// Gaussians near the faces of the cube.
Preset make_ex5_5() {
  Preset pr;
  pr.name = "ex5_5";
  pr.description = "3D Gaussian sources near the cube faces";
  pr.dim = 3;
  pr.default_kappa = -500.0;
  pr.sigma = 0.05;
  pr.default_quad_extra = std::nullopt;
  pr.reference = ReferencePolicy::self_convergence;
  pr.reference_N = 128;
  pr.make = [pr](const PresetParams& p) {
    ProblemSpec s = base_spec(3, p, pr);
    const double sg = p.sigma.value_or(*pr.sigma);
    const double k = s.kappa;
    s.f = [sg](const Point& x) -> Vec3 {
      return {gauss(x[0] - 0.9, x[1], x[2], sg) + gauss(x[0] + 0.9, x[1], x[2], sg),
              gauss(x[0], x[1] - 0.95, x[2], sg) + gauss(x[0], x[1] + 0.95, x[2], sg),
              gauss(x[0], x[1], x[2] - 0.98, sg) + gauss(x[0], x[1], x[2] + 0.98, sg)};
    };
    s.rho = [sg, k](const Point& x) {
      const double s2 = sg * sg;
      double div = 0.0;
      for (double c : {-0.9, 0.9})
        div += -2.0 * (x[0] - c) / s2 * gauss(x[0] - c, x[1], x[2], sg);
      for (double c : {-0.95, 0.95})
        div += -2.0 * (x[1] - c) / s2 * gauss(x[0], x[1] - c, x[2], sg);
      for (double c : {-0.98, 0.98})
        div += -2.0 * (x[2] - c) / s2 * gauss(x[0], x[1], x[2] - c, sg);
      return div / k;
    };
    return s;
  };
  return pr;
}

Preset make_ex5_6() {
  Preset pr;
  pr.name = "ex5_6";
  pr.description = "Maxwell eigenvalue study against the exact spectrum";
  pr.dim = 0;
  pr.kind = PresetKind::eigen;
  pr.default_kappa = 0.0;
  pr.reference = ReferencePolicy::none;
  return pr;
}

// Manufactured solution with a nonzero tangential trace.
Preset make_lift2d() {
  Preset pr;
  pr.name = "lift2d";
  pr.description = "2D manufactured solution with inhomogeneous tangential trace";
  pr.dim = 2;
  pr.default_kappa = 1.0;
  pr.reference = ReferencePolicy::exact;
  auto u = [](const Point& x) -> Vec3 {
    return {std::exp(0.5 * x[0]) * std::cos(x[1]), std::sin(x[0]) * std::exp(x[1] / 3.0), 0.0};
  };
  pr.make = [pr, u](const PresetParams& p) {
    ProblemSpec s = base_spec(2, p, pr);
    const double k = s.kappa;
    s.f = [k, u](const Point& x) -> Vec3 {
      const double e1 = std::exp(0.5 * x[0]), e2 = std::exp(x[1] / 3.0);
      const double d2c = std::cos(x[0]) * e2 / 3.0 + e1 * std::cos(x[1]);
      const double d1c = -std::sin(x[0]) * e2 + 0.5 * e1 * std::sin(x[1]);
      const Vec3 v = u(x);
      return {d2c + k * v[0], -d1c + k * v[1], 0.0};
    };
    s.rho = [](const Point& x) {
      return 0.5 * std::exp(0.5 * x[0]) * std::cos(x[1]) +
             std::sin(x[0]) * std::exp(x[1] / 3.0) / 3.0;
    };
    s.b = [u](const Point& x) {
      const Vec3 v = u(x);
      if (std::abs(x[0]) == 1.0) return x[0] * v[1];
      return -x[1] * v[0];
    };
    return s;
  };
  pr.exact = [u](double) {
    ExactSolution e;
    e.u = u;
    e.curl = [](const Point& x) -> Vec3 {
      return {0.0, 0.0,
              std::cos(x[0]) * std::exp(x[1] / 3.0) + std::exp(0.5 * x[0]) * std::sin(x[1])};
    };
    return e;
  };
  return pr;
}

}  // namespace

namespace presets {

double tanh_bump_alpha(double x1, double x2, double gamma) {
  static constexpr double centres[] = {-0.8, -0.4, 0.0, 0.4, 0.8};
  double sum = 0.0;
  for (double cx : centres)
    for (double cy : centres) {
      const double r = std::hypot(x1 - cx, x2 - cy);
      sum += std::tanh((r - 0.16) / (std::sqrt(2.0) * gamma));
    }
  return 5.5 + 0.2 * sum;
}

}  // namespace presets

Preset get_preset(std::string_view name) {
  if (name == "ex5_1") return make_ex5_1();
  if (name == "ex5_2") return make_ex5_2();
  if (name == "ex5_3") return make_ex5_3();
  if (name == "ex5_4") return make_ex5_4();
  if (name == "ex5_5") return make_ex5_5();
  if (name == "ex5_6") return make_ex5_6();
  if (name == "lift2d") return make_lift2d();
  raise(ErrorCode::unknown_preset, "unknown preset: " + std::string(name));
}

std::vector<std::string> preset_names() {
  return {"ex5_1", "ex5_2", "ex5_3", "ex5_4", "ex5_5", "ex5_6", "lift2d"};
}

PresetSolve solve_preset(const Preset& preset, const PresetParams& params,
                         const SolveOptions& options, const KrylovConfig& krylov) {
  require(preset.kind != PresetKind::eigen && static_cast<bool>(preset.make),
          ErrorCode::invalid_argument, "preset has no source problem");
  const auto t0 = std::chrono::steady_clock::now();
  ProblemSpec spec = preset.make(params);
  PresetSolve out;
  out.dim = spec.dim;
  out.N = spec.N;
  out.kappa = spec.kappa;
  if (spec.dim == 2 && spec.b) {
    LiftResult lr = lift_boundary_2d(spec);
    out.lift = lr.lift;
    spec = std::move(lr.modified);
  }
  if (preset.kind == PresetKind::variable_coefficient) {
    const VarCoefOperator op(spec.alpha, spec.N, spec.kappa, spec.quad_extra);
    VarCoefResult r = solve_varcoef(op, assemble_source_2d(spec), krylov);
    out.field2 = std::move(r.field);
    out.iterations = r.iterations;
    out.residual_history = std::move(r.residual_history);
    out.converged = r.converged;
  } else if (spec.dim == 2) {
    const MassDecomp dec = decompose_mass(build_mass_matrix(spec.N));
    Solve2DResult r = solve_source_2d(assemble_source_2d(spec), spec.kappa, dec, options);
    out.field2 = std::move(r.field);
    out.gauss_residual_relative = r.report.gauss_residual_relative;
  } else {
    const MassDecomp dec = decompose_mass(build_mass_matrix(spec.N));
    Solve3DResult r = solve_source_3d(assemble_source_3d(spec), spec.kappa, dec, options);
    out.field3 = std::move(r.field);
    out.gauss_residual_relative = r.report.gauss_residual_relative;
  }
  out.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::optional<FieldError> preset_error(const Preset& preset, const PresetSolve& s) {
  if (!preset.exact) return std::nullopt;
  ExactSolution exact = preset.exact(s.kappa);
  if (s.lift) {
    auto lift = s.lift;
    ExactSolution base = exact;
    exact.u = [base, lift](const Point& x) -> Vec3 {
      const Vec3 a = base.u(x), b = lift->value(x);
      return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
    };
    exact.curl = [base, lift](const Point& x) -> Vec3 {
      const Vec3 a = base.curl(x), b = lift->curl(x);
      return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
    };
  }
  if (s.field2) return field_error(*s.field2, exact);
  return field_error(*s.field3, exact);
}

FieldError preset_difference(const PresetSolve& a, const PresetSolve& reference) {
  require(a.dim == reference.dim, ErrorCode::dimension_mismatch, "solves differ in dimension");
  require(!a.lift && !reference.lift, ErrorCode::invalid_argument,
          "self-convergence is not defined for lifted presets");
  if (a.field2) return field_difference(*a.field2, *reference.field2);
  return field_difference(*a.field3, *reference.field3);
}

}  // namespace curlspec
