// SPDX-License-Identifier: Apache-2.0
#include "curlspec/assembly.hpp"

#include <algorithm>
#include <cmath>

#include "curlspec/error.hpp"
#include "curlspec/legendre.hpp"
#include "curlspec/parallel.hpp"

namespace curlspec {

void validate(const ProblemSpec& spec) {
  require(spec.dim == 2 || spec.dim == 3, ErrorCode::invalid_argument, "dim must be 2 or 3");
  require(spec.N >= 2, ErrorCode::invalid_argument, "N must be at least 2");
  require(spec.quad_extra >= 2, ErrorCode::invalid_argument, "quad_extra must be at least 2");
  require(std::isfinite(spec.kappa), ErrorCode::invalid_argument, "kappa must be finite");
}

namespace {

// Columns of a basis table scaled by the quadrature weights.
DenseMatrix weighted(const DenseMatrix& table, const std::vector<double>& w) {
  DenseMatrix out = table;
  for (Index a = 0; a < out.cols(); ++a)
    for (Index m = 0; m < out.rows(); ++m) out(m, a) *= w[a];
  return out;
}

void check_finite(double v) {
  if (!std::isfinite(v)) raise(ErrorCode::non_finite_source, "source sample is not finite");
}

}  // namespace

SourceData2D assemble_source_2d(const ProblemSpec& spec) {
  validate(spec);
  require(spec.dim == 2, ErrorCode::dimension_mismatch, "assemble_source_2d needs dim 2");
  const Index N = spec.N, nq = spec.quadrature_order();
  const QuadratureRule q = gauss_legendre(nq);
  const BasisTable t = basis_table(N, q.nodes);
  const DenseMatrix phiw = weighted(t.phi, q.weights);
  const DenseMatrix psiw = weighted(t.psi, q.weights);

  DenseMatrix s1(nq, nq), s2(nq, nq), sr(nq, nq);
  for (Index b = 0; b < nq; ++b)
    for (Index a = 0; a < nq; ++a) {
      const Point x{q.nodes[a], q.nodes[b], 0.0};
      if (spec.f) {
        const Vec3 v = spec.f(x);
        check_finite(v[0]);
        check_finite(v[1]);
        s1(a, b) = v[0];
        s2(a, b) = v[1];
      }
      if (spec.rho) {
        const double r = spec.rho(x);
        check_finite(r);
        sr(a, b) = -r;
      }
    }
  return {kron2_apply(psiw, phiw, s1), kron2_apply(phiw, psiw, s2), kron2_apply(psiw, psiw, sr)};
}

SourceData3D assemble_source_3d(const ProblemSpec& spec) {
  validate(spec);
  require(spec.dim == 3, ErrorCode::dimension_mismatch, "assemble_source_3d needs dim 3");
  const Index N = spec.N, nq = spec.quadrature_order();
  const QuadratureRule q = gauss_legendre(nq);
  const BasisTable t = basis_table(N, q.nodes);
  const DenseMatrix phiw = weighted(t.phi, q.weights);
  const DenseMatrix psiw = weighted(t.psi, q.weights);

  Tensor3 s1(nq, nq, nq), s2(nq, nq, nq), s3(nq, nq, nq), sr(nq, nq, nq);
  parallel_for(nq, [&](Index begin, Index end, int) {
    for (Index c = begin; c < end; ++c)
      for (Index b = 0; b < nq; ++b)
        for (Index a = 0; a < nq; ++a) {
          const Point x{q.nodes[a], q.nodes[b], q.nodes[c]};
          if (spec.f) {
            const Vec3 v = spec.f(x);
            for (double e : v) check_finite(e);
            s1(a, b, c) = v[0];
            s2(a, b, c) = v[1];
            s3(a, b, c) = v[2];
          }
          if (spec.rho) {
            const double r = spec.rho(x);
            check_finite(r);
            sr(a, b, c) = -r;
          }
        }
  });
  return {kron3_apply(psiw, psiw, phiw, s1), kron3_apply(psiw, phiw, psiw, s2),
          kron3_apply(phiw, psiw, psiw, s3), kron3_apply(psiw, psiw, psiw, sr)};
}

namespace {

struct SeriesValue {
  double value;
  double derivative;
};

// Σ c_m φ_m(x) and its derivative.
SeriesValue phi_series(const std::vector<double>& c, double x) {
  const Index n = static_cast<Index>(c.size());
  double l0 = 1.0, l1 = x, dl0 = 0.0, dl1 = 1.0;
  double v = 0.0, dv = 0.0;
  for (Index m = 0; m < n; ++m) {
    double lm, dlm;
    if (m == 0) {
      lm = 1.0;
      dlm = 0.0;
    } else if (m == 1) {
      lm = x;
      dlm = 1.0;
    } else {
      lm = ((2.0 * m - 1.0) * x * l1 - (m - 1.0) * l0) / m;
      dlm = dl0 + (2.0 * m - 1.0) * l1;
      l0 = l1;
      l1 = lm;
      dl0 = dl1;
      dl1 = dlm;
    }
    const double s = std::sqrt((2.0 * m + 1.0) / 2.0);
    v += c[m] * s * lm;
    dv += c[m] * s * dlm;
  }
  return {v, dv};
}

}  // namespace

Vec3 BoundaryLift2D::value(const Point& x) const {
  const double p0x = 0.5 * (1.0 - x[0]), p1x = 0.5 * (1.0 + x[0]);
  const double p0y = 0.5 * (1.0 - x[1]), p1y = 0.5 * (1.0 + x[1]);
  const double a = phi_series(b3, x[0]).value, b = phi_series(b4, x[0]).value;
  const double c = phi_series(b1, x[1]).value, d = phi_series(b2, x[1]).value;
  return {a * p0y + b * p1y, p0x * c + p1x * d, 0.0};
}

Vec3 BoundaryLift2D::curl(const Point& x) const {
  const double a = phi_series(b3, x[0]).value, b = phi_series(b4, x[0]).value;
  const double c = phi_series(b1, x[1]).value, d = phi_series(b2, x[1]).value;
  return {0.0, 0.0, 0.5 * (d - c) - 0.5 * (b - a)};
}

Vec3 BoundaryLift2D::curl_curl(const Point& x) const {
  const double a = phi_series(b3, x[0]).derivative, b = phi_series(b4, x[0]).derivative;
  const double c = phi_series(b1, x[1]).derivative, d = phi_series(b2, x[1]).derivative;
  return {0.5 * (d - c), 0.5 * (b - a), 0.0};
}

double BoundaryLift2D::div(const Point& x) const {
  const double p0x = 0.5 * (1.0 - x[0]), p1x = 0.5 * (1.0 + x[0]);
  const double p0y = 0.5 * (1.0 - x[1]), p1y = 0.5 * (1.0 + x[1]);
  const double a = phi_series(b3, x[0]).derivative, b = phi_series(b4, x[0]).derivative;
  const double c = phi_series(b1, x[1]).derivative, d = phi_series(b2, x[1]).derivative;
  return a * p0y + b * p1y + p0x * c + p1x * d;
}

bool BoundaryLift2D::is_zero() const noexcept {
  for (const auto* v : {&b1, &b2, &b3, &b4})
    for (double e : *v)
      if (e != 0.0) return false;
  return true;
}

LiftResult lift_boundary_2d(const ProblemSpec& spec) {
  validate(spec);
  require(spec.dim == 2, ErrorCode::dimension_mismatch, "boundary lifting is 2D");
  auto lift = std::make_shared<BoundaryLift2D>();
  lift->N = spec.N;
  const Index N = spec.N;
  for (auto* v : {&lift->b1, &lift->b2, &lift->b3, &lift->b4}) v->assign(N, 0.0);

  LiftResult out{lift, spec};
  if (!spec.b) return out;

  const QuadratureRule q = gauss_legendre(spec.quadrature_order());
  const BasisTable t = basis_table(N, q.nodes);
  for (Index a = 0; a < q.order(); ++a) {
    const double s = q.nodes[a], w = q.weights[a];
    const double left = spec.b({-1.0, s, 0.0}), right = spec.b({1.0, s, 0.0});
    const double bottom = spec.b({s, -1.0, 0.0}), top = spec.b({s, 1.0, 0.0});
    for (double v : {left, right, bottom, top}) check_finite(v);
    for (Index m = 0; m < N; ++m) {
      const double pw = t.phi(m, a) * w;
      lift->b1[m] -= left * pw;
      lift->b2[m] += right * pw;
      lift->b3[m] += bottom * pw;
      lift->b4[m] -= top * pw;
    }
  }

  std::shared_ptr<const BoundaryLift2D> ub = lift;
  const ProblemSpec base = spec;
  out.modified.b = nullptr;
  out.modified.f = [ub, base](const Point& x) {
    Vec3 f = base.f ? base.f(x) : Vec3{0.0, 0.0, 0.0};
    const Vec3 cc = ub->curl_curl(x), v = ub->value(x);
    for (int c = 0; c < 2; ++c) f[c] -= cc[c] + base.kappa * v[c];
    return f;
  };
  out.modified.rho = [ub, base](const Point& x) {
    return (base.rho ? base.rho(x) : 0.0) - ub->div(x);
  };
  return out;
}

namespace {

const DenseMatrix* pick(const BasisTable& t, int which) {
  switch (which) {
    case 0: return &t.phi;
    case 1: return &t.psi;
    case 2: return &t.dpsi;
    default: return &t.dphi;
  }
}

enum Table { kPhi = 0, kPsi = 1, kDpsi = 2, kDphi = 3 };

struct AxisTables {
  std::array<DenseMatrix, 4> t;  // transposed: points × modes
  explicit AxisTables(const BasisTable& b) {
    for (int w = 0; w < 4; ++w) t[w] = pick(b, w)->transposed();
  }
  const DenseMatrix& operator[](int w) const { return t[w]; }
};

// Σ X(a, m) C(m, n) Y(b, n)
DenseMatrix contract2(const DenseMatrix& x, const DenseMatrix& c, const DenseMatrix& y) {
  return kron2_apply(y, x, c);
}

}  // namespace

FieldSamples2D evaluate_field(const SpectralField2D& f, const TensorGrid& g, EvalOptions opt) {
  const Index N = f.order();
  check_shapes(f, N);
  const AxisTables tx(basis_table(N, g.x)), ty(basis_table(N, g.y));
  FieldSamples2D s;
  s.u1 = contract2(tx[kPhi], f.U, ty[kPsi]);
  s.u2 = contract2(tx[kPsi], f.V, ty[kPhi]);
  if (opt.curl) {
    s.curl = contract2(tx[kDpsi], f.V, ty[kPhi]);
    const DenseMatrix du = contract2(tx[kPhi], f.U, ty[kDpsi]);
    for (Index q = 0; q < s.curl.size(); ++q) s.curl.data()[q] -= du.data()[q];
  }
  if (opt.div) {
    s.div = contract2(tx[kDphi], f.U, ty[kPsi]);
    const DenseMatrix dv = contract2(tx[kPsi], f.V, ty[kDphi]);
    for (Index q = 0; q < s.div.size(); ++q) s.div.data()[q] += dv.data()[q];
  }
  return s;
}

FieldSamples3D evaluate_field(const SpectralField3D& f, const TensorGrid& g, EvalOptions opt) {
  const Index N = f.order();
  check_shapes(f, N);
  const AxisTables tx(basis_table(N, g.x)), ty(basis_table(N, g.y)), tz(basis_table(N, g.z));
  auto c3 = [&](int a, int b, int c, const Tensor3& t) { return kron3_apply(tz[c], ty[b], tx[a], t); };
  auto combine = [](Tensor3 a, const Tensor3& b, double sign) {
    for (Index q = 0; q < a.size(); ++q) a.data()[q] += sign * b.data()[q];
    return a;
  };
  FieldSamples3D s;
  s.u1 = c3(kPhi, kPsi, kPsi, f.U);
  s.u2 = c3(kPsi, kPhi, kPsi, f.V);
  s.u3 = c3(kPsi, kPsi, kPhi, f.W);
  if (opt.curl) {
    s.c1 = combine(c3(kPsi, kDpsi, kPhi, f.W), c3(kPsi, kPhi, kDpsi, f.V), -1.0);
    s.c2 = combine(c3(kPhi, kPsi, kDpsi, f.U), c3(kDpsi, kPsi, kPhi, f.W), -1.0);
    s.c3 = combine(c3(kDpsi, kPhi, kPsi, f.V), c3(kPhi, kDpsi, kPsi, f.U), -1.0);
  }
  if (opt.div) {
    s.div = combine(c3(kDphi, kPsi, kPsi, f.U), c3(kPsi, kDphi, kPsi, f.V), 1.0);
    s.div = combine(std::move(s.div), c3(kPsi, kPsi, kDphi, f.W), 1.0);
  }
  return s;
}

Vec3 evaluate_at(const SpectralField2D& f, const Point& x) {
  const FieldSamples2D s = evaluate_field(f, {{x[0]}, {x[1]}, {}});
  return {s.u1(0, 0), s.u2(0, 0), 0.0};
}

Vec3 evaluate_at(const SpectralField3D& f, const Point& x) {
  const FieldSamples3D s = evaluate_field(f, {{x[0]}, {x[1]}, {x[2]}});
  return {s.u1(0, 0, 0), s.u2(0, 0, 0), s.u3(0, 0, 0)};
}

double FieldError::hcurl() const noexcept { return std::sqrt(l2 * l2 + curl_l2 * curl_l2); }

namespace {

Index error_points(Index N, Index points) { return points > 0 ? points : 2 * N + 8; }

TensorGrid grid_of(const QuadratureRule& q, int dim) {
  TensorGrid g{q.nodes, q.nodes, {}};
  if (dim == 3) g.z = q.nodes;
  return g;
}

}  // namespace

FieldError field_error(const SpectralField2D& f, const ExactSolution& exact, Index points) {
  const QuadratureRule q = gauss_legendre(error_points(f.order(), points));
  const FieldSamples2D s = evaluate_field(f, grid_of(q, 2), {.curl = static_cast<bool>(exact.curl)});
  double e0 = 0.0, e1 = 0.0;
  for (Index b = 0; b < q.order(); ++b)
    for (Index a = 0; a < q.order(); ++a) {
      const Point x{q.nodes[a], q.nodes[b], 0.0};
      const double w = q.weights[a] * q.weights[b];
      const Vec3 u = exact.u(x);
      const double d1 = s.u1(a, b) - u[0], d2 = s.u2(a, b) - u[1];
      e0 += w * (d1 * d1 + d2 * d2);
      if (exact.curl) {
        const double dc = s.curl(a, b) - exact.curl(x)[2];
        e1 += w * dc * dc;
      }
    }
  return {std::sqrt(e0), std::sqrt(e1)};
}

FieldError field_error(const SpectralField3D& f, const ExactSolution& exact, Index points) {
  const QuadratureRule q = gauss_legendre(error_points(f.order(), points));
  const FieldSamples3D s = evaluate_field(f, grid_of(q, 3), {.curl = static_cast<bool>(exact.curl)});
  const Index n = q.order();
  double e0 = 0.0, e1 = 0.0;
  for (Index c = 0; c < n; ++c)
    for (Index b = 0; b < n; ++b)
      for (Index a = 0; a < n; ++a) {
        const Point x{q.nodes[a], q.nodes[b], q.nodes[c]};
        const double w = q.weights[a] * q.weights[b] * q.weights[c];
        const Vec3 u = exact.u(x);
        const double d1 = s.u1(a, b, c) - u[0], d2 = s.u2(a, b, c) - u[1], d3 = s.u3(a, b, c) - u[2];
        e0 += w * (d1 * d1 + d2 * d2 + d3 * d3);
        if (exact.curl) {
          const Vec3 cu = exact.curl(x);
          const double g1 = s.c1(a, b, c) - cu[0], g2 = s.c2(a, b, c) - cu[1], g3 = s.c3(a, b, c) - cu[2];
          e1 += w * (g1 * g1 + g2 * g2 + g3 * g3);
        }
      }
  return {std::sqrt(e0), std::sqrt(e1)};
}

FieldError field_difference(const SpectralField2D& fa, const SpectralField2D& fb, Index points) {
  const QuadratureRule q = gauss_legendre(error_points(std::max(fa.order(), fb.order()), points));
  const TensorGrid g = grid_of(q, 2);
  const FieldSamples2D a = evaluate_field(fa, g, {.curl = true});
  const FieldSamples2D b = evaluate_field(fb, g, {.curl = true});
  double e0 = 0.0, e1 = 0.0;
  for (Index j = 0; j < q.order(); ++j)
    for (Index i = 0; i < q.order(); ++i) {
      const double w = q.weights[i] * q.weights[j];
      const double d1 = a.u1(i, j) - b.u1(i, j), d2 = a.u2(i, j) - b.u2(i, j);
      const double dc = a.curl(i, j) - b.curl(i, j);
      e0 += w * (d1 * d1 + d2 * d2);
      e1 += w * dc * dc;
    }
  return {std::sqrt(e0), std::sqrt(e1)};
}

FieldError field_difference(const SpectralField3D& fa, const SpectralField3D& fb, Index points) {
  const QuadratureRule q = gauss_legendre(error_points(std::max(fa.order(), fb.order()), points));
  const TensorGrid g = grid_of(q, 3);
  const FieldSamples3D a = evaluate_field(fa, g, {.curl = true});
  const FieldSamples3D b = evaluate_field(fb, g, {.curl = true});
  const Index n = q.order();
  double e0 = 0.0, e1 = 0.0;
  for (Index k = 0; k < n; ++k)
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i) {
        const double w = q.weights[i] * q.weights[j] * q.weights[k];
        auto sq = [&](const Tensor3& x, const Tensor3& y) {
          const double d = x(i, j, k) - y(i, j, k);
          return d * d;
        };
        e0 += w * (sq(a.u1, b.u1) + sq(a.u2, b.u2) + sq(a.u3, b.u3));
        e1 += w * (sq(a.c1, b.c1) + sq(a.c2, b.c2) + sq(a.c3, b.c3));
      }
  return {std::sqrt(e0), std::sqrt(e1)};
}

}  // namespace curlspec
