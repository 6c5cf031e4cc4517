// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace curlspec {

/// Worker count used by slab-parallel kernels. Defaults to CURLSPEC_THREADS
/// when set, otherwise 1.
int num_threads() noexcept;
void set_num_threads(int n) noexcept;

/// Runs body(begin, end, worker) over contiguous chunks of [0, count).
/// Each index is visited exactly once, so results do not depend on the
/// worker count as long as body writes disjoint outputs.
void parallel_for(std::ptrdiff_t count,
                  const std::function<void(std::ptrdiff_t, std::ptrdiff_t, int)>& body);

}  // namespace curlspec
