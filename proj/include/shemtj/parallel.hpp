#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace shemtj {

inline unsigned default_thread_count() {
  unsigned n = std::thread::hardware_concurrency();
  return n ? n : 1;
}

// Run f(i) for i in [0, n). Work is split into contiguous blocks, one per
// worker. Callers that aggregate must do so order-independently (counts,
// per-index slots); every index sees the same inputs regardless of the
// thread count, so results do not depend on scheduling.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; i++) f(i);
    return;
  }
  if (threads > n) threads = static_cast<unsigned>(n);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned w = 0; w < threads; w++) {
    const std::size_t b = w * chunk;
    const std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&f, b, e] {
      for (std::size_t i = b; i < e; i++) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace shemtj
