// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "curlspec/massmat.hpp"

namespace curlspec::detail {

/// |M| entrywise, for componentwise residual scales.
inline MassMatrix abs_mass(const MassMatrix& m) {
  MassMatrix a = m;
  for (double& v : a.diag) v = std::abs(v);
  for (double& v : a.offdiag2) v = std::abs(v);
  return a;
}

}  // namespace curlspec::detail
