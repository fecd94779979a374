#pragma once

// Static partitioning of an index range over worker threads. Callers merge
// per-chunk results in chunk order, so output never depends on scheduling.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace coxref {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Calls fn(chunk, begin, end) for `chunks` contiguous slices of [0, n).
/// Returns the number of chunks used. The first exception thrown is rethrown.
template <class Fn>
int parallel_chunks(std::size_t n, int threads, Fn&& fn) {
  const int t = std::max(1, std::min<int>(resolve_threads(threads), static_cast<int>(std::max<std::size_t>(n, 1))));
  if (t == 1 || n < 64) {
    fn(0, std::size_t{0}, n);
    return 1;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(t));
  const std::size_t step = (n + static_cast<std::size_t>(t) - 1) / static_cast<std::size_t>(t);
  for (int c = 0; c < t; ++c) {
    const std::size_t begin = std::min(n, static_cast<std::size_t>(c) * step);
    const std::size_t end = std::min(n, begin + step);
    pool.emplace_back([&, c, begin, end] {
      try {
        fn(c, begin, end);
      } catch (...) {
        errors[static_cast<std::size_t>(c)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return t;
}

}  // namespace coxref
