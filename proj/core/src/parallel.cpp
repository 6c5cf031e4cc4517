// SPDX-License-Identifier: Apache-2.0
#include "curlspec/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace curlspec {
namespace {

int initial_threads() {
  if (const char* env = std::getenv("CURLSPEC_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

std::atomic<int>& thread_setting() {
  static std::atomic<int> value{initial_threads()};
  return value;
}

}  // namespace

int num_threads() noexcept { return thread_setting().load(); }

void set_num_threads(int n) noexcept { thread_setting().store(std::max(1, n)); }

void parallel_for(std::ptrdiff_t count,
                  const std::function<void(std::ptrdiff_t, std::ptrdiff_t, int)>& body) {
  if (count <= 0) return;
  const int workers = static_cast<int>(std::min<std::ptrdiff_t>(num_threads(), count));
  if (workers <= 1) {
    body(0, count, 0);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const std::ptrdiff_t begin = count * w / workers;
    const std::ptrdiff_t end = count * (w + 1) / workers;
    pool.emplace_back([&, w, begin, end] {
      try {
        body(begin, end, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace curlspec
