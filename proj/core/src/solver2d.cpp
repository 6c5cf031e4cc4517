// SPDX-License-Identifier: Apache-2.0
#include "curlspec/solver2d.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <vector>

#include "curlspec/error.hpp"
#include "detail/abs_mass.hpp"
#include "detail/resonance.hpp"

namespace curlspec {

double resonance_margin_2d(double kappa, const MassDecomp& dec) {
  const std::vector<double> a = detail::sorted_inverse(dec.d);
  const double target = -kappa;
  double best = std::numeric_limits<double>::infinity();
  for (double ai : a) {
    best = std::min(best, std::abs(ai - target));
    best = std::min(best, detail::nearest_gap(a, target - ai));
  }
  return best / (1.0 + std::abs(kappa));
}

Solve2DResult solve_source_2d(const SourceData2D& src, double kappa, const MassDecomp& dec,
                              const SolveOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  const Index N = dec.order(), n = N - 1;
  check_shapes(src, N);
  require(dec.has_vectors(), ErrorCode::invalid_argument, "fast solve needs eigenvectors");
  require(std::isfinite(kappa), ErrorCode::invalid_argument, "kappa must be finite");

  Solve2DResult out;
  out.report.resonance_margin = resonance_margin_2d(kappa, dec);
  if (out.report.resonance_margin < resonance_tolerance)
    raise(ErrorCode::resonant_kappa, "-kappa coincides with a discrete eigenvalue");

  const MatmulStrategy& s = options.strategy;
  const DenseMatrix& Q = dec.Q;
  const DenseMatrix Qt = Q.transposed();
  const std::vector<double>& d = dec.d;

  DenseMatrix tmp(n, n);
  auto hat = [&](ConstMatrixView x) {
    DenseMatrix r(n, n);
    gemm(Qt.view(), x, tmp.view(), s);
    gemm(tmp.view(), Q.view(), r.view(), s);
    return r;
  };
  auto unhat_into = [&](const DenseMatrix& x, MatrixView dst) {
    gemm(Q.view(), x.view(), tmp.view(), s);
    gemm(tmp.view(), Qt.view(), dst, s);
  };

  // step 1–2: split and transform
  DenseMatrix f1 = hat(src.F.view().block(1, 0, n, n));
  DenseMatrix f2 = hat(src.G.view().block(0, 1, n, n));
  DenseMatrix rh = hat(src.R.view());

  // step 3–4: pointwise solves, overwriting the hats in place
  for (Index j = 0; j < n; ++j) {
    const double dj = d[j];
    for (Index i = 0; i < n; ++i) {
      const double di = d[i];
      const double a = f1(i, j), b = f2(i, j), r = rh(i, j);
      const double p = (a + b - kappa * r) / (di + dj);
      f1(i, j) = (a - p * dj + r / di) / (1.0 + dj / di + kappa * dj);
      f2(i, j) = (b - di * p + r / dj) / (1.0 + di / dj + kappa * di);
      rh(i, j) = p;
    }
  }

  out.field = SpectralField2D::zeros(N, true);
  SpectralField2D& u = out.field;
  unhat_into(f1, u.U.view().block(1, 0, n, n));
  unhat_into(f2, u.V.view().block(0, 1, n, n));
  unhat_into(rh, u.P->view());

  // step 5: edge unknowns
  std::vector<double> fx(n), fy(n), hx(n, 0.0), hy(n, 0.0);
  for (Index j = 0; j < n; ++j) {
    fx[j] = src.F(0, j);
    fy[j] = src.G(j, 0);
  }
  for (Index j = 0; j < n; ++j) {
    double sx = 0.0, sy = 0.0;
    for (Index r = 0; r < n; ++r) {
      sx += Q(r, j) * fx[r];
      sy += Q(r, j) * fy[r];
    }
    hx[j] = sx / (1.0 + kappa * d[j]);
    hy[j] = sy / (1.0 + kappa * d[j]);
  }
  for (Index r = 0; r < n; ++r) {
    double sx = 0.0, sy = 0.0;
    for (Index j = 0; j < n; ++j) {
      sx += Q(r, j) * hx[j];
      sy += Q(r, j) * hy[j];
    }
    u.U(0, r) = sx;
    u.V(r, 0) = sy;
  }

  const GaussResidual g = gauss_residual_terms_2d(u, src, build_mass_matrix(N));
  out.report.gauss_residual = g.absolute;
  out.report.gauss_residual_relative = g.relative();
  out.report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

GaussResidual gauss_residual_terms_2d(const SpectralField2D& field, const SourceData2D& src,
                                      const MassMatrix& m) {
  const Index N = m.size + 1, n = m.size;
  check_shapes(field, N);
  check_shapes(src, N);
  DenseMatrix a(n, n), b(n, n), ua(n, n), va(n, n), sa(n, n), sb(n, n);
  mass_multiply_right(m, field.U.view().block(1, 0, n, n), a.view());
  mass_multiply_left(m, field.V.view().block(0, 1, n, n), b.view());
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      ua(i, j) = std::abs(field.U(i + 1, j));
      va(i, j) = std::abs(field.V(i, j + 1));
    }
  const MassMatrix am = detail::abs_mass(m);
  mass_multiply_right(am, ua.view(), sa.view());
  mass_multiply_left(am, va.view(), sb.view());
  GaussResidual g;
  const double mn = m.max_row_sum();
  g.scale = mn * (ua.max_abs() + va.max_abs()) + src.R.max_abs();
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      g.absolute = std::max(g.absolute, std::abs(a(i, j) + b(i, j) - src.R(i, j)));
      g.componentwise_scale = std::max(g.componentwise_scale, sa(i, j) + sb(i, j) + std::abs(src.R(i, j)));
    }
  return g;
}

double gauss_residual_2d(const SpectralField2D& field, const SourceData2D& src, const MassMatrix& m) {
  return gauss_residual_terms_2d(field, src, m).absolute;
}

}  // namespace curlspec
