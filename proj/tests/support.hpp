// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "curlspec/assembly.hpp"
#include "curlspec/fields.hpp"
#include "curlspec/legendre.hpp"
#include "curlspec/tensorops.hpp"

namespace testing_support {

using namespace curlspec;

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline double max_abs(const std::vector<double>& a) {
  double s = 0.0;
  for (double x : a) s = std::max(s, std::abs(x));
  return s;
}

inline double rel_diff(const std::vector<double>& a, const std::vector<double>& ref) {
  const double s = max_abs(ref);
  return s > 0.0 ? max_abs_diff(a, ref) / s : max_abs_diff(a, ref);
}

inline DenseMatrix random_matrix(Index r, Index c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseMatrix m(r, c);
  for (double& x : m.values()) x = u(rng);
  return m;
}

inline Tensor3 random_tensor(Index a, Index b, Index c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Tensor3 t(a, b, c);
  for (double& x : t.values()) x = u(rng);
  return t;
}

/// Explicit Kronecker product, (A ⊗ B)(i·rb + k, j·cb + l) = A(i,j) B(k,l).
inline DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      for (Index l = 0; l < b.cols(); ++l)
        for (Index k = 0; k < b.rows(); ++k)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline std::vector<double> matvec(const DenseMatrix& a, const std::vector<double>& x) {
  std::vector<double> y(static_cast<std::size_t>(a.rows()), 0.0);
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) y[i] += a(i, j) * x[j];
  return y;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// ψ'_{m+1} by the Legendre derivative identity computed pointwise.
inline double dpsi(Index m, double x) { return phi(m, x); }

/// φ'_m by central differences of high order (test-only reference).
inline double dphi_fd(Index m, double x) {
  const double h = 1e-4;
  return (8.0 * (phi(m, x + h) - phi(m, x - h)) - (phi(m, x + 2 * h) - phi(m, x - 2 * h))) /
         (12.0 * h);
}

/// Fourth-order central difference of a scalar function along one axis.
template <class F>
double d4(const F& f, const Point& x, int axis, double h = 1e-3) {
  auto at = [&](double s) {
    Point y = x;
    y[axis] += s;
    return f(y);
  };
  return (8.0 * (at(h) - at(-h)) - (at(2 * h) - at(-2 * h))) / (12.0 * h);
}

/// Second-order central difference with the given step.
template <class F>
double d2c(const F& f, const Point& x, int axis, double h) {
  Point a = x, b = x;
  a[axis] += h;
  b[axis] -= h;
  return (f(a) - f(b)) / (2.0 * h);
}

}  // namespace testing_support
