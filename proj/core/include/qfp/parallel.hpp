#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace qfp {

inline int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, count). Each index must write only to its own
// output slot; under that contract results are identical for any thread
// count, which the fingerprint and expressibility samplers rely on.
inline void parallel_for(std::size_t count, int threads,
                         const std::function<void(std::size_t)>& fn) {
  int nthreads = resolve_thread_count(threads);
  if (nthreads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  if (static_cast<std::size_t>(nthreads) > count) nthreads = static_cast<int>(count);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nthreads));
  for (int t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = static_cast<std::size_t>(t); i < count;
           i += static_cast<std::size_t>(nthreads)) {
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace qfp
