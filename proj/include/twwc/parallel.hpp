#pragma once

#include <cstddef>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace twwc {

// Worker cap: TWWC_THREADS if set (clamped to [1,256]), else hardware count.
inline unsigned worker_count() {
  if (const char* env = std::getenv("TWWC_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v < 1) v = 1;
    if (v > 256) v = 256;
    return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Static block partition of [0,n) over worker threads. Every call site must
// write results into per-index slots (no shared accumulation), which makes
// output independent of the schedule.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = worker_count();
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const unsigned use = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  std::vector<std::thread> pool;
  pool.reserve(use);
  for (unsigned w = 0; w < use; ++w) {
    const std::size_t lo = n * w / use;
    const std::size_t hi = n * (w + 1) / use;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace twwc
