// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace curlspec::detail {

inline std::vector<double> sorted_inverse(const std::vector<double>& d) {
  std::vector<double> a(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) a[i] = 1.0 / d[i];
  std::sort(a.begin(), a.end());
  return a;
}

// min |a_k − x| over a sorted array.
inline double nearest_gap(const std::vector<double>& a, double x) {
  if (a.empty()) return std::numeric_limits<double>::infinity();
  auto it = std::lower_bound(a.begin(), a.end(), x);
  double best = std::numeric_limits<double>::infinity();
  if (it != a.end()) best = std::abs(*it - x);
  if (it != a.begin()) best = std::min(best, std::abs(*(it - 1) - x));
  return best;
}

}  // namespace curlspec::detail
