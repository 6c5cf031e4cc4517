// SPDX-License-Identifier: Apache-2.0
#include "curlspec/solver3d.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <vector>

#include "curlspec/error.hpp"
#include "curlspec/parallel.hpp"
#include "detail/abs_mass.hpp"
#include "detail/resonance.hpp"

namespace curlspec {

double resonance_margin_3d(double kappa, const MassDecomp& dec) {
  const std::vector<double> a = detail::sorted_inverse(dec.d);
  const double target = -kappa;
  double best = std::numeric_limits<double>::infinity();
  for (double ai : a) {
    best = std::min(best, detail::nearest_gap(a, target - ai));
    for (double aj : a) best = std::min(best, detail::nearest_gap(a, target - ai - aj));
  }
  return best / (1.0 + std::abs(kappa));
}

namespace {

// Face slice held as an n×n matrix with arbitrary element strides.
struct FaceSlice {
  double* base;
  Index stride_row, stride_col;
};

void solve_face(FaceSlice f, Index n, double kappa, const MassDecomp& dec, const DenseMatrix& Qt,
                const MatmulStrategy& s) {
  const DenseMatrix& Q = dec.Q;
  DenseMatrix x(n, n), t(n, n);
  for (Index c = 0; c < n; ++c)
    for (Index r = 0; r < n; ++r) x(r, c) = f.base[r * f.stride_row + c * f.stride_col];
  gemm(Qt.view(), x.view(), t.view(), s);
  gemm(t.view(), Q.view(), x.view(), s);
  for (Index c = 0; c < n; ++c)
    for (Index r = 0; r < n; ++r) {
      const double dr = dec.d[r], dc = dec.d[c];
      x(r, c) /= dr + dc + kappa * dr * dc;
    }
  gemm(Q.view(), x.view(), t.view(), s);
  gemm(t.view(), Qt.view(), x.view(), s);
  for (Index c = 0; c < n; ++c)
    for (Index r = 0; r < n; ++r) f.base[r * f.stride_row + c * f.stride_col] = x(r, c);
}

// Overwrites F, G, H, R with U, V, W, P. Returns the constraint residual
// measured on the transformed coefficients.
GaussResidual solve_inplace(SourceData3D& s, double kappa, const MassDecomp& dec,
                            const MatmulStrategy& strategy) {
  const Index N = dec.order(), n = N - 1;
  const DenseMatrix& Q = dec.Q;
  const DenseMatrix Qt = Q.transposed();
  const std::vector<double>& d = dec.d;

  TensorView3 v1{s.F.data() + 1, n, n, n, N, N * n};
  TensorView3 v2{s.G.data() + n, n, n, n, n, n * N};
  TensorView3 v3{s.H.data() + n * n, n, n, n, n, n * n};
  TensorView3 vr = TensorView3::of(s.R);

  for (TensorView3 v : {v1, v2, v3, vr}) apply_cube_inplace(v, Qt, Q, strategy);

  GaussResidual g;
  std::mutex merge;
  parallel_for(n, [&](Index begin, Index end, int) {
    GaussResidual local;
    for (Index k = begin; k < end; ++k)
      for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i) {
          double& a = v1(i, j, k);
          double& b = v2(i, j, k);
          double& c = v3(i, j, k);
          double& r = vr(i, j, k);
          const auto x = detail::solve_interior_mode(d[i], d[j], d[k], kappa, a, b, c, r);
          const double t1 = d[j] * d[k] * x[0], t2 = d[i] * d[k] * x[1], t3 = d[i] * d[j] * x[2];
          local.absolute = std::max(local.absolute, std::abs(t1 + t2 + t3 - r));
          local.scale = std::max(local.scale, std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(r));
          a = x[0];
          b = x[1];
          c = x[2];
          r = x[3];
        }
    std::lock_guard lock(merge);
    g.absolute = std::max(g.absolute, local.absolute);
    g.scale = std::max(g.scale, local.scale);
  });
  g.componentwise_scale = g.scale;

  for (TensorView3 v : {v1, v2, v3, vr}) apply_cube_inplace(v, Q, Qt, strategy);

  solve_face({s.F.data(), N, N * n}, n, kappa, dec, Qt, strategy);   // (0, j, k)
  solve_face({s.G.data(), 1, n * N}, n, kappa, dec, Qt, strategy);       // (i, 0, k)
  solve_face({s.H.data(), 1, n}, n, kappa, dec, Qt, strategy);           // (i, j, 0)
  return g;
}

void validate(const SourceData3D& src, double kappa, const MassDecomp& dec, Solve3DReport& report) {
  check_shapes(src, dec.order());
  require(dec.has_vectors(), ErrorCode::invalid_argument, "fast solve needs eigenvectors");
  require(std::isfinite(kappa), ErrorCode::invalid_argument, "kappa must be finite");
  report.resonance_margin = resonance_margin_3d(kappa, dec);
  if (report.resonance_margin < resonance_tolerance)
    raise(ErrorCode::resonant_kappa, "-kappa coincides with a discrete eigenvalue");
}

SpectralField3D adopt_result(SourceData3D& s) {
  SpectralField3D f;
  f.U = std::move(s.F);
  f.V = std::move(s.G);
  f.W = std::move(s.H);
  f.P = std::move(s.R);
  return f;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Solve3DResult solve_source_3d(const SourceData3D& src, double kappa, const MassDecomp& dec,
                              const SolveOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  Solve3DResult out;
  validate(src, kappa, dec, out.report);
  SourceData3D work = src;
  solve_inplace(work, kappa, dec, options.strategy);
  out.field = adopt_result(work);
  const GaussResidual g = gauss_residual_terms_3d(out.field, src, build_mass_matrix(dec.order()));
  out.report.gauss_residual = g.absolute;
  out.report.gauss_residual_relative = g.relative();
  out.report.wall_time_s = seconds_since(t0);
  return out;
}

Solve3DResult solve_source_3d(SourceData3D&& src, double kappa, const MassDecomp& dec,
                              const SolveOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  Solve3DResult out;
  validate(src, kappa, dec, out.report);
  const GaussResidual g = solve_inplace(src, kappa, dec, options.strategy);
  out.field = adopt_result(src);
  out.report.gauss_residual = g.absolute;
  out.report.gauss_residual_relative = g.relative();
  out.report.residual_in_transformed_basis = true;
  out.report.wall_time_s = seconds_since(t0);
  return out;
}

namespace {

// Copies the n³ block of t starting at `offset` with strides (1, ld1, ld2).
Tensor3 interior_copy(const Tensor3& t, Index offset, Index n, Index ld1, Index ld2) {
  Tensor3 out(n, n, n);
  for (Index k = 0; k < n; ++k)
    for (Index j = 0; j < n; ++j)
      std::copy_n(t.data() + offset + j * ld1 + k * ld2, n, &out(0, j, k));
  return out;
}

// t ← M applied along `axis` of an n³ tensor.
void mass_along(const MassMatrix& m, Tensor3& t, int axis) {
  const Index n = m.size;
  DenseMatrix buf(n, n);
  for (Index s = 0; s < n; ++s) {
    MatrixView slab = axis == 2 ? MatrixView{t.data() + s * n, n, n, n * n}
                                : MatrixView{t.data() + s * n * n, n, n, n};
    if (axis == 0)
      mass_multiply_left(m, slab, buf.view());
    else
      mass_multiply_right(m, slab, buf.view());
    for (Index c = 0; c < n; ++c) std::copy_n(buf.data() + c * n, n, slab.data + c * slab.ld);
  }
}

}  // namespace

GaussResidual gauss_residual_terms_3d(const SpectralField3D& field, const SourceData3D& src,
                                      const MassMatrix& m) {
  const Index N = m.size + 1, n = m.size;
  check_shapes(field, N);
  check_shapes(src, N);
  Tensor3 a = interior_copy(field.U, 1, n, N, N * n);
  Tensor3 b = interior_copy(field.V, n, n, n, n * N);
  Tensor3 c = interior_copy(field.W, n * n, n, n, n * n);
  mass_along(m, a, 1);
  mass_along(m, a, 2);
  mass_along(m, b, 0);
  mass_along(m, b, 2);
  mass_along(m, c, 0);
  mass_along(m, c, 1);
  GaussResidual g;
  const double* r = src.R.data();
  for (Index q = 0; q < n * n * n; ++q) {
    const double x = a.data()[q], y = b.data()[q], z = c.data()[q];
    g.absolute = std::max(g.absolute, std::abs(x + y + z - r[q]));
  }
  // scales from |U|, |V|, |W| and |M|; reuses a, b, c
  const MassMatrix am = detail::abs_mass(m);
  a = interior_copy(field.U, 1, n, N, N * n);
  b = interior_copy(field.V, n, n, n, n * N);
  c = interior_copy(field.W, n * n, n, n, n * n);
  const double mn = m.max_row_sum();
  g.scale = mn * mn * (a.max_abs() + b.max_abs() + c.max_abs()) + src.R.max_abs();
  for (Tensor3* t : {&a, &b, &c})
    for (double& v : t->values()) v = std::abs(v);
  mass_along(am, a, 1);
  mass_along(am, a, 2);
  mass_along(am, b, 0);
  mass_along(am, b, 2);
  mass_along(am, c, 0);
  mass_along(am, c, 1);
  for (Index q = 0; q < n * n * n; ++q)
    g.componentwise_scale =
        std::max(g.componentwise_scale, a.data()[q] + b.data()[q] + c.data()[q] + std::abs(r[q]));
  return g;
}

double gauss_residual_3d(const SpectralField3D& field, const SourceData3D& src, const MassMatrix& m) {
  return gauss_residual_terms_3d(field, src, m).absolute;
}

}  // namespace curlspec
