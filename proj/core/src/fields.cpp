// SPDX-License-Identifier: Apache-2.0
#include "curlspec/fields.hpp"

#include <algorithm>

#include "curlspec/error.hpp"

namespace curlspec {

SourceData2D SourceData2D::zeros(Index N) {
  return {DenseMatrix(N, N - 1), DenseMatrix(N - 1, N), DenseMatrix(N - 1, N - 1)};
}

SourceData3D SourceData3D::zeros(Index N) {
  const Index n = N - 1;
  return {Tensor3(N, n, n), Tensor3(n, N, n), Tensor3(n, n, N), Tensor3(n, n, n)};
}

SpectralField2D SpectralField2D::zeros(Index N, bool with_p) {
  SpectralField2D f{DenseMatrix(N, N - 1), DenseMatrix(N - 1, N), std::nullopt};
  if (with_p) f.P = DenseMatrix(N - 1, N - 1);
  return f;
}

SpectralField3D SpectralField3D::zeros(Index N, bool with_p) {
  const Index n = N - 1;
  SpectralField3D f{Tensor3(N, n, n), Tensor3(n, N, n), Tensor3(n, n, N), std::nullopt};
  if (with_p) f.P = Tensor3(n, n, n);
  return f;
}

namespace {

void expect(const DenseMatrix& m, Index r, Index c, const char* what) {
  require(m.rows() == r && m.cols() == c, ErrorCode::dimension_mismatch, what);
}

void expect(const Tensor3& t, Tensor3::Dims d, const char* what) {
  require(t.dims() == d, ErrorCode::dimension_mismatch, what);
}

void append(std::vector<double>& out, std::span<const double> v) {
  out.insert(out.end(), v.begin(), v.end());
}

std::span<const double> take(std::span<const double>& x, Index n) {
  auto head = x.first(static_cast<std::size_t>(n));
  x = x.subspan(static_cast<std::size_t>(n));
  return head;
}

}  // namespace

void check_shapes(const SourceData2D& s, Index N) {
  expect(s.F, N, N - 1, "F must be N x (N-1)");
  expect(s.G, N - 1, N, "G must be (N-1) x N");
  expect(s.R, N - 1, N - 1, "R must be (N-1) x (N-1)");
}

void check_shapes(const SourceData3D& s, Index N) {
  const Index n = N - 1;
  expect(s.F, {N, n, n}, "F must be N x (N-1) x (N-1)");
  expect(s.G, {n, N, n}, "G must be (N-1) x N x (N-1)");
  expect(s.H, {n, n, N}, "H must be (N-1) x (N-1) x N");
  expect(s.R, {n, n, n}, "R must be (N-1)^3");
}

void check_shapes(const SpectralField2D& f, Index N) {
  expect(f.U, N, N - 1, "U must be N x (N-1)");
  expect(f.V, N - 1, N, "V must be (N-1) x N");
  if (f.P) expect(*f.P, N - 1, N - 1, "P must be (N-1) x (N-1)");
}

void check_shapes(const SpectralField3D& f, Index N) {
  const Index n = N - 1;
  expect(f.U, {N, n, n}, "U must be N x (N-1) x (N-1)");
  expect(f.V, {n, N, n}, "V must be (N-1) x N x (N-1)");
  expect(f.W, {n, n, N}, "W must be (N-1) x (N-1) x N");
  if (f.P) expect(*f.P, {n, n, n}, "P must be (N-1)^3");
}

Index stacked_size_2d(Index N) noexcept { return 3 * (N - 1) * (N - 1) + 2 * (N - 1); }
Index stacked_size_3d(Index N) noexcept { return 4 * (N - 1) * (N - 1) * (N - 1) + 3 * (N - 1) * (N - 1); }

std::vector<double> stack(const SpectralField2D& f) {
  const Index N = f.order();
  check_shapes(f, N);
  std::vector<double> out;
  out.reserve(stacked_size_2d(N));
  append(out, f.U.values());
  append(out, f.V.values());
  if (f.P)
    append(out, f.P->values());
  else
    out.resize(stacked_size_2d(N), 0.0);
  return out;
}

std::vector<double> stack(const SpectralField3D& f) {
  const Index N = f.order();
  check_shapes(f, N);
  std::vector<double> out;
  out.reserve(stacked_size_3d(N));
  append(out, f.U.values());
  append(out, f.V.values());
  append(out, f.W.values());
  if (f.P)
    append(out, f.P->values());
  else
    out.resize(stacked_size_3d(N), 0.0);
  return out;
}

std::vector<double> stack(const SourceData2D& s) {
  check_shapes(s, s.order());
  std::vector<double> out;
  out.reserve(stacked_size_2d(s.order()));
  append(out, s.F.values());
  append(out, s.G.values());
  append(out, s.R.values());
  return out;
}

std::vector<double> stack(const SourceData3D& s) {
  check_shapes(s, s.order());
  std::vector<double> out;
  out.reserve(stacked_size_3d(s.order()));
  append(out, s.F.values());
  append(out, s.G.values());
  append(out, s.H.values());
  append(out, s.R.values());
  return out;
}

SpectralField2D unstack_field_2d(std::span<const double> x, Index N) {
  require(static_cast<Index>(x.size()) == stacked_size_2d(N), ErrorCode::length_mismatch,
          "stacked 2D vector has wrong length");
  const Index n = N - 1;
  SpectralField2D f;
  f.U = ivec(take(x, N * n), N, n);
  f.V = ivec(take(x, n * N), n, N);
  f.P = ivec(take(x, n * n), n, n);
  return f;
}

SpectralField3D unstack_field_3d(std::span<const double> x, Index N) {
  require(static_cast<Index>(x.size()) == stacked_size_3d(N), ErrorCode::length_mismatch,
          "stacked 3D vector has wrong length");
  const Index n = N - 1;
  SpectralField3D f;
  f.U = ivec(take(x, N * n * n), {N, n, n});
  f.V = ivec(take(x, N * n * n), {n, N, n});
  f.W = ivec(take(x, N * n * n), {n, n, N});
  f.P = ivec(take(x, n * n * n), {n, n, n});
  return f;
}

SourceData2D unstack_source_2d(std::span<const double> x, Index N) {
  SpectralField2D f = unstack_field_2d(x, N);
  return {std::move(f.U), std::move(f.V), std::move(*f.P)};
}

SourceData3D unstack_source_3d(std::span<const double> x, Index N) {
  SpectralField3D f = unstack_field_3d(x, N);
  return {std::move(f.U), std::move(f.V), std::move(f.W), std::move(*f.P)};
}

}  // namespace curlspec
