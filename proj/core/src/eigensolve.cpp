// SPDX-License-Identifier: Apache-2.0
#include "curlspec/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curlspec/error.hpp"

namespace curlspec {

const char* to_string(ModeCategory c) noexcept {
  switch (c) {
    case ModeCategory::gradient: return "gradient";
    case ModeCategory::interior: return "interior";
    case ModeCategory::edge_x: return "edge_x";
    case ModeCategory::edge_y: return "edge_y";
    case ModeCategory::face_x: return "face_x";
    case ModeCategory::face_y: return "face_y";
    case ModeCategory::face_z: return "face_z";
  }
  return "unknown";
}

namespace {

void sort_modes(std::vector<EigenMode>& modes) {
  std::sort(modes.begin(), modes.end(), [](const EigenMode& a, const EigenMode& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.category != b.category) return a.category < b.category;
    if (a.index != b.index) return a.index < b.index;
    return a.branch < b.branch;
  });
}

SpectrumSummary summarize(const std::vector<EigenMode>& modes) {
  SpectrumSummary s;
  for (const EigenMode& m : modes) {
    switch (m.category) {
      case ModeCategory::gradient: ++s.gradient; break;
      case ModeCategory::interior: ++s.interior; break;
      default: ++s.boundary; break;
    }
    if (m.value == 0.0)
      ++s.zero_multiplicity;
    else
      s.nonzero.push_back(m.value);
  }
  return s;
}

std::vector<double> inverse(const MassDecomp& dec) {
  std::vector<double> a(dec.d.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = 1.0 / dec.d[i];
  return a;
}

}  // namespace

Spectrum spectrum_2d(const MassDecomp& dec) {
  const Index n = dec.size();
  const std::vector<double> a = inverse(dec);
  Spectrum s;
  s.modes.reserve(2 * n * n + 2 * n);
  for (Index i = 1; i <= n; ++i)
    for (Index j = 1; j <= n; ++j) {
      s.modes.push_back({a[i - 1] + a[j - 1], ModeCategory::interior, {i, j, 0}, 0});
      s.modes.push_back({0.0, ModeCategory::gradient, {i, j, 0}, 0});
    }
  for (Index j = 1; j <= n; ++j) {
    s.modes.push_back({a[j - 1], ModeCategory::edge_x, {0, j, 0}, 0});
    s.modes.push_back({a[j - 1], ModeCategory::edge_y, {j, 0, 0}, 0});
  }
  sort_modes(s.modes);
  s.summary = summarize(s.modes);
  return s;
}

Spectrum spectrum_3d(const MassDecomp& dec) {
  const Index n = dec.size();
  const std::vector<double> a = inverse(dec);
  Spectrum s;
  s.modes.reserve(3 * n * n * n + 3 * n * n);
  for (Index i = 1; i <= n; ++i)
    for (Index j = 1; j <= n; ++j) {
      for (Index k = 1; k <= n; ++k) {
        const double v = a[i - 1] + a[j - 1] + a[k - 1];
        s.modes.push_back({v, ModeCategory::interior, {i, j, k}, 1});
        s.modes.push_back({v, ModeCategory::interior, {i, j, k}, 2});
        s.modes.push_back({0.0, ModeCategory::gradient, {i, j, k}, 0});
      }
      const double v = a[i - 1] + a[j - 1];
      s.modes.push_back({v, ModeCategory::face_x, {0, i, j}, 0});
      s.modes.push_back({v, ModeCategory::face_y, {i, 0, j}, 0});
      s.modes.push_back({v, ModeCategory::face_z, {i, j, 0}, 0});
    }
  sort_modes(s.modes);
  s.summary = summarize(s.modes);
  return s;
}

std::vector<double> nonzero_eigenvalues_2d(const MassDecomp& dec) {
  const std::vector<double> a = inverse(dec);
  std::vector<double> v;
  v.reserve(a.size() * a.size() + 2 * a.size());
  for (double x : a) {
    for (double y : a) v.push_back(x + y);
    v.push_back(x);
    v.push_back(x);
  }
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<double> nonzero_eigenvalues_3d(const MassDecomp& dec) {
  const std::vector<double> a = inverse(dec);
  const std::size_t n = a.size();
  std::vector<double> v;
  v.reserve(2 * n * n * n + 3 * n * n);
  for (double x : a)
    for (double y : a) {
      for (double z : a) {
        v.push_back(x + y + z);
        v.push_back(x + y + z);
      }
      for (int c = 0; c < 3; ++c) v.push_back(x + y);
    }
  std::sort(v.begin(), v.end());
  return v;
}

namespace {

void check_index(Index v, Index lo, Index hi) {
  if (v < lo || v > hi) raise(ErrorCode::index_out_of_range, "eigen mode index out of range");
}

void need_vectors(const MassDecomp& dec) {
  require(dec.has_vectors(), ErrorCode::invalid_argument, "eigenvectors need a decomposition with Q");
}

// out(r, c) = sum of w_s · q_{a_s}(r) q_{b_s}(c) over the listed pairs.
void add_outer(const MassDecomp& dec, Index a, Index b, double w, MatrixView out) {
  for (Index c = 0; c < out.cols; ++c) {
    const double qc = dec.Q(c, b) * w;
    for (Index r = 0; r < out.rows; ++r) out(r, c) += dec.Q(r, a) * qc;
  }
}

// rank-1 cube (Q e_i) ∘ (Q e_j) ∘ (Q e_k) scaled by w, added into view t
void add_outer3(const MassDecomp& dec, Index i, Index j, Index k, double w, TensorView3 t) {
  for (Index z = 0; z < t.n3; ++z)
    for (Index y = 0; y < t.n2; ++y) {
      const double s = w * dec.Q(y, j) * dec.Q(z, k);
      if (s == 0.0) continue;
      for (Index x = 0; x < t.n1; ++x) t(x, y, z) += dec.Q(x, i) * s;
    }
}

}  // namespace

SpectralField2D eigenvector_2d(const EigenMode& mode, const MassDecomp& dec) {
  const Index n = dec.size(), N = n + 1;
  SpectralField2D f = SpectralField2D::zeros(N);
  const auto [i, j, unused] = mode.index;
  (void)unused;
  switch (mode.category) {
    case ModeCategory::gradient:
      check_index(i, 1, n);
      check_index(j, 1, n);
      f.U(i, j - 1) = 1.0;
      f.V(i - 1, j) = 1.0;
      break;
    case ModeCategory::interior: {
      check_index(i, 1, n);
      check_index(j, 1, n);
      need_vectors(dec);
      const double di = dec.d[i - 1], dj = dec.d[j - 1];
      add_outer(dec, i - 1, j - 1, 1.0, f.U.view().block(1, 0, n, n));
      add_outer(dec, i - 1, j - 1, -dj / di, f.V.view().block(0, 1, n, n));
      break;
    }
    case ModeCategory::edge_x:
      check_index(j, 1, n);
      need_vectors(dec);
      for (Index r = 0; r < n; ++r) f.U(0, r) = dec.Q(r, j - 1);
      break;
    case ModeCategory::edge_y:
      check_index(i, 1, n);
      need_vectors(dec);
      for (Index r = 0; r < n; ++r) f.V(r, 0) = dec.Q(r, i - 1);
      break;
    default:
      raise(ErrorCode::index_out_of_range, "mode category is not a 2D category");
  }
  return f;
}

SpectralField3D eigenvector_3d(const EigenMode& mode, const MassDecomp& dec) {
  const Index n = dec.size(), N = n + 1;
  SpectralField3D f = SpectralField3D::zeros(N);
  const auto [i, j, k] = mode.index;
  TensorView3 v1{f.U.data() + 1, n, n, n, N, N * n};
  TensorView3 v2{f.V.data() + n, n, n, n, n, n * N};
  TensorView3 v3{f.W.data() + n * n, n, n, n, n, n * n};
  auto face = [&](Tensor3& t, Index stride_r, Index stride_c, Index a, Index b) {
    check_index(a, 1, n);
    check_index(b, 1, n);
    need_vectors(dec);
    for (Index c = 0; c < n; ++c)
      for (Index r = 0; r < n; ++r)
        t.data()[r * stride_r + c * stride_c] = dec.Q(r, a - 1) * dec.Q(c, b - 1);
  };
  switch (mode.category) {
    case ModeCategory::gradient:
      check_index(i, 1, n);
      check_index(j, 1, n);
      check_index(k, 1, n);
      v1(i - 1, j - 1, k - 1) = 1.0;
      v2(i - 1, j - 1, k - 1) = 1.0;
      v3(i - 1, j - 1, k - 1) = 1.0;
      break;
    case ModeCategory::interior: {
      check_index(i, 1, n);
      check_index(j, 1, n);
      check_index(k, 1, n);
      need_vectors(dec);
      const double di = dec.d[i - 1], dj = dec.d[j - 1], dk = dec.d[k - 1];
      if (mode.branch == 1) {
        add_outer3(dec, i - 1, j - 1, k - 1, 1.0, v1);
        add_outer3(dec, i - 1, j - 1, k - 1, -dk / di, v3);
      } else if (mode.branch == 2) {
        add_outer3(dec, i - 1, j - 1, k - 1, 1.0, v2);
        add_outer3(dec, i - 1, j - 1, k - 1, -dk / dj, v3);
      } else {
        raise(ErrorCode::index_out_of_range, "3D interior modes need branch 1 or 2");
      }
      break;
    }
    case ModeCategory::face_x: face(f.U, N, N * n, j, k); break;
    case ModeCategory::face_y: face(f.V, 1, n * N, i, k); break;
    case ModeCategory::face_z: face(f.W, 1, n, i, j); break;
    default:
      raise(ErrorCode::index_out_of_range, "mode category is not a 3D category");
  }
  return f;
}

std::vector<double> exact_spectrum(int dim, Index count) {
  require(dim == 2 || dim == 3, ErrorCode::invalid_argument, "dim must be 2 or 3");
  require(count >= 1, ErrorCode::invalid_argument, "count must be positive");
  const double scale = std::numbers::pi * std::numbers::pi / 4.0;
  // grow the lattice radius until every k ≤ R² is complete and enough exist
  for (long long radius = 4;; radius *= 2) {
    const long long limit = radius * radius;
    std::vector<long long> ks;
    if (dim == 2) {
      for (long long r = 0; r <= radius; ++r)
        for (long long s = 0; s <= radius; ++s) {
          const long long k = r * r + s * s;
          if (k > 0 && k <= limit) ks.push_back(k);
        }
    } else {
      for (long long a = 0; a <= radius; ++a)
        for (long long b = 0; b <= radius; ++b)
          for (long long c = 0; c <= radius; ++c) {
            const long long k = a * a + b * b + c * c;
            if (k > limit || a * b + b * c + c * a == 0) continue;
            ks.push_back(k);
            if (a * b * c > 0) ks.push_back(k);
          }
    }
    if (static_cast<Index>(ks.size()) < count) continue;
    std::sort(ks.begin(), ks.end());
    std::vector<double> out(count);
    for (Index q = 0; q < count; ++q) out[q] = scale * static_cast<double>(ks[q]);
    return out;
  }
}

double trusted_fraction(std::span<const double> numeric, std::span<const double> exact,
                        double rel_threshold) {
  require(exact.size() >= numeric.size(), ErrorCode::length_mismatch,
          "exact list shorter than numeric list");
  if (numeric.empty()) return 0.0;
  Index good = 0;
  for (std::size_t q = 0; q < numeric.size(); ++q)
    if (std::abs(numeric[q] - exact[q]) <= rel_threshold * exact[q]) ++good;
  return static_cast<double>(good) / static_cast<double>(numeric.size());
}

double exact_mode_value(const EigenMode& mode, Index N) {
  if (mode.category == ModeCategory::gradient) return 0.0;
  const double scale = std::numbers::pi * std::numbers::pi / 4.0;
  double k = 0.0;
  for (Index i : mode.index)
    if (i > 0) k += static_cast<double>((N - i) * (N - i));
  return scale * k;
}

double trusted_fraction_modes(int dim, const MassDecomp& dec, double rel_threshold) {
  require(dim == 2 || dim == 3, ErrorCode::invalid_argument, "dim must be 2 or 3");
  const Index n = dec.size();
  if (n == 0) return 0.0;
  const Index N = dec.order();
  const double scale = std::numbers::pi * std::numbers::pi / 4.0;
  std::vector<double> lam(n), ex(n);
  for (Index i = 0; i < n; ++i) {
    lam[i] = 1.0 / dec.d[i];
    ex[i] = scale * static_cast<double>((N - 1 - i) * (N - 1 - i));
  }
  auto ok = [rel_threshold](double a, double e) { return std::abs(a - e) <= rel_threshold * e; };
  Index good = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (dim == 2) {
        good += ok(lam[i] + lam[j], ex[i] + ex[j]);
        continue;
      }
      good += 3 * ok(lam[i] + lam[j], ex[i] + ex[j]);
      for (Index k = 0; k < n; ++k) good += 2 * ok(lam[i] + lam[j] + lam[k], ex[i] + ex[j] + ex[k]);
    }
  if (dim == 2)
    for (Index i = 0; i < n; ++i) good += 2 * ok(lam[i], ex[i]);
  const Index total = dim == 2 ? n * n + 2 * n : 2 * n * n * n + 3 * n * n;
  return static_cast<double>(good) / static_cast<double>(total);
}

}  // namespace curlspec
