// SPDX-License-Identifier: Apache-2.0
#include "curlspec/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curlspec/error.hpp"

namespace curlspec {
namespace {

struct LegendrePair {
  double value;
  double derivative;
};

// L_n and L_n' at an interior point by the three-term recurrence.
LegendrePair legendre_pair(Index n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (Index k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

QuadratureRule gauss_legendre(Index n) {
  require(n >= 1, ErrorCode::invalid_argument, "quadrature order must be positive");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const Index half = (n + 1) / 2;
  for (Index i = 0; i < half; ++i) {
    // root i counted from the right end
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    LegendrePair p{};
    for (int it = 0; it < 100; ++it) {
      p = legendre_pair(n, x);
      const double dx = p.value / p.derivative;
      x -= dx;
      if (std::abs(dx) <= 1e-15) break;
    }
    p = legendre_pair(n, x);
    const double w = 2.0 / ((1.0 - x * x) * p.derivative * p.derivative);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

double legendre(Index n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return 1.0;
  for (Index k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double phi(Index m, double x) { return std::sqrt((2.0 * m + 1.0) / 2.0) * legendre(m, x); }

double psi(Index m, double x) {
  require(m >= 1, ErrorCode::index_out_of_range, "psi index starts at 1");
  return (legendre(m + 1, x) - legendre(m - 1, x)) / std::sqrt(2.0 * (2.0 * m + 1.0));
}

BasisTable basis_table(Index n_max, std::span<const double> points) {
  require(n_max >= 1, ErrorCode::invalid_argument, "basis table needs n_max >= 1");
  const Index np = static_cast<Index>(points.size());
  BasisTable t;
  t.n_max = n_max;
  t.phi = DenseMatrix(n_max, np);
  t.dphi = DenseMatrix(n_max, np);
  t.psi = DenseMatrix(n_max - 1, np);
  t.dpsi = DenseMatrix(n_max - 1, np);

  std::vector<double> l(n_max + 1), dl(n_max + 1);
  for (Index a = 0; a < np; ++a) {
    const double x = points[a];
    l[0] = 1.0;
    dl[0] = 0.0;
    if (n_max >= 1) {
      l[1] = x;
      dl[1] = 1.0;
    }
    for (Index k = 1; k < n_max; ++k) {
      l[k + 1] = ((2.0 * k + 1.0) * x * l[k] - k * l[k - 1]) / (k + 1.0);
      // L'_{k+1} = L'_{k-1} + (2k+1) L_k
      dl[k + 1] = dl[k - 1] + (2.0 * k + 1.0) * l[k];
    }
    for (Index m = 0; m < n_max; ++m) {
      const double s = std::sqrt((2.0 * m + 1.0) / 2.0);
      t.phi(m, a) = s * l[m];
      t.dphi(m, a) = s * dl[m];
    }
    for (Index m = 1; m < n_max; ++m) {
      const double s = 1.0 / std::sqrt(2.0 * (2.0 * m + 1.0));
      t.psi(m - 1, a) = s * (l[m + 1] - l[m - 1]);
      t.dpsi(m - 1, a) = s * (dl[m + 1] - dl[m - 1]);
    }
  }
  return t;
}

}  // namespace curlspec
