// SPDX-License-Identifier: Apache-2.0
#include "curlspec/massmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "curlspec/error.hpp"

namespace curlspec {

double MassMatrix::operator()(Index r, Index c) const noexcept {
  if (r == c) return diag[r];
  if (c == r + 2) return offdiag2[r];
  if (r == c + 2) return offdiag2[c];
  return 0.0;
}

DenseMatrix MassMatrix::dense() const {
  DenseMatrix m(size, size);
  for (Index r = 0; r < size; ++r) {
    m(r, r) = diag[r];
    if (r + 2 < size) m(r, r + 2) = m(r + 2, r) = offdiag2[r];
  }
  return m;
}

double MassMatrix::max_row_sum() const noexcept {
  double best = 0.0;
  for (Index r = 0; r < size; ++r) {
    double s = std::abs(diag[r]);
    if (r + 2 < size) s += std::abs(offdiag2[r]);
    if (r >= 2) s += std::abs(offdiag2[r - 2]);
    best = std::max(best, s);
  }
  return best;
}

MassMatrix build_mass_matrix(Index N) {
  require(N >= 2, ErrorCode::invalid_argument, "mass matrix needs N >= 2");
  MassMatrix m;
  m.size = N - 1;
  m.diag.resize(m.size);
  m.offdiag2.resize(std::max<Index>(m.size - 2, 0));
  for (Index r = 0; r < m.size; ++r) {
    const double n = static_cast<double>(r + 1);
    m.diag[r] = (1.0 / (2 * n + 1)) * (1.0 / (2 * n - 1) + 1.0 / (2 * n + 3));
    if (r + 2 < m.size)
      m.offdiag2[r] = -1.0 / (std::sqrt(2 * n + 1) * std::sqrt(2 * n + 5) * (2 * n + 3));
  }
  return m;
}

void mass_multiply_left(const MassMatrix& m, ConstMatrixView x, MatrixView y) {
  require(x.rows == m.size && y.rows == m.size && x.cols == y.cols, ErrorCode::dimension_mismatch,
          "mass_multiply_left shape mismatch");
  const Index n = m.size;
  for (Index j = 0; j < x.cols; ++j) {
    const double* xc = x.data + j * x.ld;
    double* yc = y.data + j * y.ld;
    for (Index r = 0; r < n; ++r) {
      double s = m.diag[r] * xc[r];
      if (r + 2 < n) s += m.offdiag2[r] * xc[r + 2];
      if (r >= 2) s += m.offdiag2[r - 2] * xc[r - 2];
      yc[r] = s;
    }
  }
}

void mass_multiply_right(const MassMatrix& m, ConstMatrixView x, MatrixView y) {
  require(x.cols == m.size && y.cols == m.size && x.rows == y.rows, ErrorCode::dimension_mismatch,
          "mass_multiply_right shape mismatch");
  const Index n = m.size;
  for (Index c = 0; c < n; ++c) {
    double* yc = y.data + c * y.ld;
    const double* x0 = x.data + c * x.ld;
    for (Index i = 0; i < x.rows; ++i) yc[i] = m.diag[c] * x0[i];
    if (c + 2 < n) {
      const double* x2 = x.data + (c + 2) * x.ld;
      for (Index i = 0; i < x.rows; ++i) yc[i] += m.offdiag2[c] * x2[i];
    }
    if (c >= 2) {
      const double* xm = x.data + (c - 2) * x.ld;
      for (Index i = 0; i < x.rows; ++i) yc[i] += m.offdiag2[c - 2] * xm[i];
    }
  }
}

namespace {

// Implicit QL with Wilkinson-style shifts on a symmetric tridiagonal matrix.
// d: diagonal (overwritten by eigenvalues), e: subdiagonal with e[i]
// coupling i and i+1 (destroyed). z: n×n column-major, identity on entry,
// accumulates eigenvectors when non-null.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, double* z, Index n) {
  e.resize(n, 0.0);
  if (n > 0) e[n - 1] = 0.0;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double shift_total = 0.0, scale = 0.0;
  for (Index l = 0; l < n; ++l) {
    scale = std::max(scale, std::abs(d[l]) + std::abs(e[l]));
    Index m = l;
    while (m < n && std::abs(e[m]) > eps * scale) ++m;
    if (m == n) m = n - 1;
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > 60) raise(ErrorCode::decomposition_failed, "tridiagonal QL did not converge");
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (Index i = l + 2; i < n; ++i) d[i] -= h;
        shift_total += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0, s = 0.0, s2 = 0.0;
        const double el1 = e[l + 1];
        for (Index i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          if (z) {
            double* zi = z + i * n;
            double* zi1 = z + (i + 1) * n;
            for (Index k = 0; k < n; ++k) {
              const double t = zi1[k];
              zi1[k] = s * zi[k] + c * t;
              zi[k] = c * zi[k] - s * t;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * scale);
    }
    d[l] += shift_total;
    e[l] = 0.0;
  }
}

struct BlockResult {
  std::vector<Index> rows;  // global storage rows of this parity block
  std::vector<double> values;
  std::vector<double> vectors;  // column-major, rows.size() squared
};

BlockResult solve_block(const MassMatrix& m, Index parity, bool want_vectors) {
  BlockResult b;
  for (Index r = parity; r < m.size; r += 2) b.rows.push_back(r);
  const Index n = static_cast<Index>(b.rows.size());
  b.values.resize(n);
  std::vector<double> e(n, 0.0);
  for (Index t = 0; t < n; ++t) {
    b.values[t] = m.diag[b.rows[t]];
    if (t + 1 < n) e[t] = m.offdiag2[b.rows[t]];
  }
  double* z = nullptr;
  if (want_vectors) {
    b.vectors.assign(static_cast<std::size_t>(n * n), 0.0);
    for (Index t = 0; t < n; ++t) b.vectors[t + t * n] = 1.0;
    z = b.vectors.data();
  }
  tridiagonal_ql(b.values, e, z, n);
  return b;
}

}  // namespace

MassDecomp decompose_mass(const MassMatrix& m, EigenvectorPolicy policy) {
  const bool want = policy == EigenvectorPolicy::compute;
  BlockResult even = solve_block(m, 0, want);
  BlockResult odd = solve_block(m, 1, want);

  struct Entry {
    double value;
    int block;
    Index column;
  };
  std::vector<Entry> order;
  order.reserve(m.size);
  for (Index t = 0; t < static_cast<Index>(even.values.size()); ++t) order.push_back({even.values[t], 0, t});
  for (Index t = 0; t < static_cast<Index>(odd.values.size()); ++t) order.push_back({odd.values[t], 1, t});
  std::stable_sort(order.begin(), order.end(), [](const Entry& a, const Entry& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.block != b.block) return a.block < b.block;
    return a.column < b.column;
  });

  MassDecomp dec;
  dec.d.resize(m.size);
  if (want) dec.Q = DenseMatrix(m.size, m.size);
  for (Index c = 0; c < m.size; ++c) {
    const Entry& en = order[c];
    dec.d[c] = en.value;
    if (!(en.value > 0.0) || !std::isfinite(en.value))
      raise(ErrorCode::decomposition_failed, "mass eigenvalue not positive");
    if (!want) continue;
    const BlockResult& b = en.block == 0 ? even : odd;
    const Index n = static_cast<Index>(b.rows.size());
    const double* col = b.vectors.data() + en.column * n;
    // sign convention: largest-magnitude entry positive
    Index arg = 0;
    for (Index t = 1; t < n; ++t)
      if (std::abs(col[t]) > std::abs(col[arg])) arg = t;
    const double sign = col[arg] < 0 ? -1.0 : 1.0;
    for (Index t = 0; t < n; ++t) dec.Q(b.rows[t], c) = sign * col[t];
  }
  return dec;
}

}  // namespace curlspec
