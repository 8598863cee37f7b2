#pragma once
// Contiguous-chunk parallel loop. Callers must make per-index work independent
// (one child stream per index, results written to index-addressed slots) so
// the output does not depend on the partition or thread count.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace hs {

inline void parallel_for(std::size_t count, unsigned threads,
                         const std::function<void(std::size_t, std::size_t)>& body) {
  if (count == 0) return;
  if (threads <= 1) {
    body(0, count);
    return;
  }
  std::size_t workers = std::min<std::size_t>(threads, count);
  std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t begin = w * chunk;
    std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(body, begin, end);
  }
  for (auto& t : pool) t.join();
}

}  // namespace hs
