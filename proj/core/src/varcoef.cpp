// SPDX-License-Identifier: Apache-2.0
#include "curlspec/varcoef.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "curlspec/error.hpp"
#include "curlspec/legendre.hpp"
#include "curlspec/solver2d.hpp"

namespace curlspec {

VarCoefOperator::VarCoefOperator(ScalarField alpha, Index N, double kappa, Index quad_extra)
    : N_(N), kappa_(kappa) {
  require(N >= 2, ErrorCode::invalid_argument, "N must be at least 2");
  require(quad_extra >= 2, ErrorCode::invalid_argument, "quad_extra must be at least 2");
  require(static_cast<bool>(alpha), ErrorCode::invalid_argument, "alpha must be callable");
  const QuadratureRule q = gauss_legendre(N + quad_extra);
  const Index nq = q.order();
  alpha_ = DenseMatrix(nq, nq);
  weighted_ = DenseMatrix(nq, nq);
  double total = 0.0;
  for (Index b = 0; b < nq; ++b)
    for (Index a = 0; a < nq; ++a) {
      const double v = alpha({q.nodes[a], q.nodes[b], 0.0});
      if (!std::isfinite(v)) raise(ErrorCode::non_finite_source, "alpha sample is not finite");
      alpha_(a, b) = v;
      weighted_(a, b) = v * q.weights[a] * q.weights[b];
      total += weighted_(a, b);
    }
  mean_alpha_ = total / 4.0;
  phi_ = basis_table(N, q.nodes).phi;
  phi_t_ = phi_.transposed();
  mass_ = build_mass_matrix(N);
  dec_ = std::make_shared<MassDecomp>(decompose_mass(mass_));
}

Index VarCoefOperator::size() const noexcept { return stacked_size_2d(N_); }

void VarCoefOperator::apply(std::span<const double> x, std::span<double> y) const {
  require(static_cast<Index>(x.size()) == size() && y.size() == x.size(), ErrorCode::dimension_mismatch,
          "operator vector length mismatch");
  const Index N = N_, n = N - 1;
  ConstMatrixView u{x.data(), N, n, N};
  ConstMatrixView v{x.data() + N * n, n, N, n};
  ConstMatrixView p{x.data() + 2 * N * n, n, n, n};
  MatrixView yu{y.data(), N, n, N};
  MatrixView yv{y.data() + N * n, n, N, n};
  MatrixView yp{y.data() + 2 * N * n, n, n, n};

  // scalar curl coefficients on φ_m φ_n: C(m, n) = V(m−1, n)[m ≥ 1] − U(m, n−1)[n ≥ 1]
  DenseMatrix c(N, N);
  for (Index j = 0; j < N; ++j)
    for (Index i = 0; i < N; ++i) {
      double s = 0.0;
      if (i >= 1) s += v(i - 1, j);
      if (j >= 1) s -= u(i, j - 1);
      c(i, j) = s;
    }
  // curl at nodes, weighted by α w, projected back onto φ_m φ_n
  DenseMatrix nodal = kron2_apply(phi_t_, phi_t_, c);
  for (Index q = 0; q < nodal.size(); ++q) nodal.data()[q] *= weighted_.data()[q];
  const DenseMatrix back = kron2_apply(phi_, phi_, nodal);

  DenseMatrix tmp(n, n);
  // u rows: −back(m, n) for n ≥ 1, plus κ U M and the multiplier term
  mass_multiply_right(mass_, u, yu);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < N; ++i) yu(i, j) = -back(i, j + 1) + kappa_ * yu(i, j);
  mass_multiply_right(mass_, p, tmp.view());
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) yu(i + 1, j) += tmp(i, j);

  mass_multiply_left(mass_, v, yv);
  for (Index j = 0; j < N; ++j)
    for (Index i = 0; i < n; ++i) yv(i, j) = back(i + 1, j) + kappa_ * yv(i, j);
  mass_multiply_left(mass_, p, tmp.view());
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) yv(i, j + 1) += tmp(i, j);

  // divergence rows: U¹M + MU²
  mass_multiply_right(mass_, u.block(1, 0, n, n), yp);
  mass_multiply_left(mass_, v.block(0, 1, n, n), tmp.view());
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) yp(i, j) += tmp(i, j);
}

std::vector<double> VarCoefOperator::apply(std::span<const double> x) const {
  std::vector<double> y(x.size());
  apply(x, y);
  return y;
}

std::vector<double> apply_operator(const VarCoefOperator& op, std::span<const double> x) {
  return op.apply(x);
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

GmresResult gmres(const LinearMap& a, const LinearMap& precond, std::span<const double> b,
                  const KrylovConfig& cfg) {
  require(cfg.restart >= 1 && cfg.tolerance > 0.0 && cfg.max_iterations >= 1,
          ErrorCode::invalid_argument, "invalid Krylov configuration");
  const std::size_t n = b.size();
  const Index m = cfg.restart;
  GmresResult out;
  out.x.assign(n, 0.0);
  const double bnorm = norm(b);
  out.history.push_back(bnorm > 0.0 ? 1.0 : 0.0);
  if (bnorm == 0.0) {
    out.converged = true;
    return out;
  }

  std::vector<double> r(b.begin(), b.end()), w(n), z(n);
  std::vector<std::vector<double>> basis(m + 1, std::vector<double>(n));
  std::vector<double> h((m + 1) * m), cs(m), sn(m), g(m + 1), y(m);
  double beta = bnorm;

  while (out.iterations < cfg.max_iterations) {
    for (std::size_t q = 0; q < n; ++q) basis[0][q] = r[q] / beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;
    Index k = 0;
    bool done = false;
    for (; k < m && out.iterations < cfg.max_iterations; ++k) {
      precond(basis[k], z);
      a(z, w);
      // modified Gram–Schmidt, repeated once for stability
      for (int pass = 0; pass < 2; ++pass)
        for (Index i = 0; i <= k; ++i) {
          const double hij = dot(w, basis[i]);
          h[i + k * (m + 1)] += hij;
          for (std::size_t q = 0; q < n; ++q) w[q] -= hij * basis[i][q];
        }
      const double hk = norm(w);
      h[k + 1 + k * (m + 1)] = hk;
      if (hk > 0.0)
        for (std::size_t q = 0; q < n; ++q) basis[k + 1][q] = w[q] / hk;
      for (Index i = 0; i < k; ++i) {
        double& h0 = h[i + k * (m + 1)];
        double& h1 = h[i + 1 + k * (m + 1)];
        const double t = cs[i] * h0 + sn[i] * h1;
        h1 = -sn[i] * h0 + cs[i] * h1;
        h0 = t;
      }
      double& hkk = h[k + k * (m + 1)];
      double& hk1 = h[k + 1 + k * (m + 1)];
      const double rho = std::hypot(hkk, hk1);
      cs[k] = rho > 0.0 ? hkk / rho : 1.0;
      sn[k] = rho > 0.0 ? hk1 / rho : 0.0;
      hkk = rho;
      hk1 = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      ++out.iterations;
      const double rel = std::abs(g[k + 1]) / bnorm;
      out.history.push_back(rel);
      if (rel <= cfg.tolerance || hk == 0.0) {
        ++k;
        done = true;
        break;
      }
    }
    // back substitution and update x += M⁻¹ V y
    for (Index i = k - 1; i >= 0; --i) {
      double s = g[i];
      for (Index j = i + 1; j < k; ++j) s -= h[i + j * (m + 1)] * y[j];
      y[i] = s / h[i + i * (m + 1)];
    }
    std::fill(w.begin(), w.end(), 0.0);
    for (Index j = 0; j < k; ++j)
      for (std::size_t q = 0; q < n; ++q) w[q] += y[j] * basis[j][q];
    precond(w, z);
    for (std::size_t q = 0; q < n; ++q) out.x[q] += z[q];
    std::fill(h.begin(), h.end(), 0.0);

    a(out.x, w);
    for (std::size_t q = 0; q < n; ++q) r[q] = b[q] - w[q];
    beta = norm(r);
    if (beta / bnorm <= cfg.tolerance) {
      out.converged = true;
      break;
    }
    if (done && beta == 0.0) break;
  }
  return out;
}

VarCoefResult solve_varcoef(const VarCoefOperator& op, const SourceData2D& src, const KrylovConfig& cfg) {
  const Index N = op.order();
  check_shapes(src, N);
  const double abar = op.mean_alpha();
  require(abar > 0.0, ErrorCode::invalid_argument, "mean alpha must be positive");
  const MassDecomp& dec = op.decomposition();
  const double kappa_eff = op.kappa() / abar;
  // Checks resonance of the preconditioner up front.
  if (resonance_margin_2d(kappa_eff, dec) < resonance_tolerance)
    raise(ErrorCode::resonant_kappa, "preconditioner kappa is resonant");

  const Index nu = N * (N - 1);
  LinearMap precond = [&](std::span<const double> x, std::span<double> z) {
    SourceData2D s = unstack_source_2d(x, N);
    for (double& e : s.F.values()) e /= abar;
    for (double& e : s.G.values()) e /= abar;
    const Solve2DResult r = solve_source_2d(s, kappa_eff, dec);
    std::copy(r.field.U.values().begin(), r.field.U.values().end(), z.begin());
    std::copy(r.field.V.values().begin(), r.field.V.values().end(), z.begin() + nu);
    auto pz = z.subspan(2 * nu);
    for (std::size_t q = 0; q < pz.size(); ++q) pz[q] = abar * r.field.P->data()[q];
  };
  LinearMap a = [&](std::span<const double> x, std::span<double> y) { op.apply(x, y); };

  const std::vector<double> b = stack(src);
  GmresResult g = gmres(a, precond, b, cfg);
  VarCoefResult out;
  out.field = unstack_field_2d(g.x, N);
  out.iterations = g.iterations;
  out.residual_history = std::move(g.history);
  out.converged = g.converged;
  return out;
}

}  // namespace curlspec
