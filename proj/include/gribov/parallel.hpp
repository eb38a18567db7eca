#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace gribov {

/// Worker count for internal loops: hardware concurrency, capped by the
/// GRIBOV_THREADS environment variable when it holds a positive integer.
inline std::size_t worker_count() {
  std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GRIBOV_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap > 0) hw = std::min(hw, static_cast<std::size_t>(cap));
    } catch (...) {
      // unparsable cap: ignore
    }
  }
  return hw;
}

/// Calls fn(begin, end) on disjoint chunks of [0, count). The chunk layout
/// depends only on `count` and the worker count, never on timing.
template <typename Fn>
void parallel_chunks(std::size_t count, Fn&& fn) {
  const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(count, 1));
  if (workers <= 1 || count < 64) {
    fn(std::size_t{0}, count);
    return;
  }
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  for (std::size_t begin = 0; begin < count; begin += chunk) {
    pool.emplace_back([&fn, begin, end = std::min(count, begin + chunk)] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace gribov
