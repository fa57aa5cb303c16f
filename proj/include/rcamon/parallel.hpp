#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rcamon {

inline unsigned resolve_threads(unsigned n_threads) {
  if (n_threads != 0) return n_threads;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc != 0 ? hc : 1;
}

// Runs body(i) for i in [0, n) across worker threads with strided index
// assignment. Each index must write only to its own output slot, so the
// result does not depend on the worker count. The first exception thrown by
// any body is rethrown after all workers join.
template <typename F>
void parallel_for(std::size_t n, unsigned n_threads, F&& body) {
  const unsigned workers = resolve_threads(n_threads);
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (std::size_t i = w; i < n; i += workers) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace rcamon
