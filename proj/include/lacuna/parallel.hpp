#pragma once

#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace lacuna {

// Worker count for trial batteries: hardware concurrency capped by the
// LACUNA_THREADS environment variable (>= 1).
inline int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("LACUNA_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && cap < n) n = static_cast<int>(cap);
  }
  return n;
}

// Runs body(i) for i in [0, n). Each index is handled exactly once; callers
// keep determinism by writing per-index results into preallocated slots and
// reducing in index order afterwards.
template <typename F>
void parallel_for(std::int64_t n, F&& body) {
  const int workers = worker_count();
  if (workers <= 1 || n < 2) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([w, workers, n, &body] {
      for (std::int64_t i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace lacuna
