#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace hhb {

/// Worker cap from the HHB_THREADS environment variable; 0 or unset means one
/// worker per hardware thread.
inline int thread_count() {
  int n = 0;
  if (const char* env = std::getenv("HHB_THREADS")) n = std::atoi(env);
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  return n;
}

namespace detail {
/// Set inside worker threads so nested loops stay serial instead of spawning
/// threads per call.
inline thread_local bool inside_parallel_worker = false;
}  // namespace detail

/// Runs fn(i) for i in [0, n); results must be written by index so the caller
/// can reduce them in a fixed order regardless of scheduling.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
  int workers = detail::inside_parallel_worker ? 1 : std::min(thread_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<int> next{0};
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      detail::inside_parallel_worker = true;
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace hhb
