#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace xidx {

// Runs fn(worker, lo, hi) over fixed contiguous chunks of [0, n). Chunk
// boundaries depend only on n and workers, so per-chunk results can be
// reduced in chunk order for worker-count-independent output.
template <typename Fn>
void parallel_chunks(size_t n, int workers, Fn&& fn) {
  workers = std::max(1, workers);
  if (workers == 1 || n < 2) {
    if (n > 0) fn(0, size_t{0}, n);
    return;
  }
  const size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const size_t lo = std::min(n, static_cast<size_t>(w) * chunk);
    const size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&fn, w, lo, hi] { fn(w, lo, hi); });
  }
  for (auto& t : threads) t.join();
}

}  // namespace xidx
