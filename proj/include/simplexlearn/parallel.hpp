#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace simplexlearn {

// Thread count: explicit request if positive, else SIMPLEXLEARN_THREADS, else
// the hardware concurrency.
int resolve_threads(int requested);

// Calls fn(begin, end, worker) over a static partition of [0, count) into at
// most `threads` contiguous chunks. The partition depends only on `count` and
// `threads`; callers that merge per-chunk results in chunk order get output
// that is independent of scheduling. The first exception thrown by any chunk
// is rethrown on the calling thread.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  if (count == 0) return;
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers == 1) {
    fn(std::size_t{0}, count, 0);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = count * w / workers;
    const std::size_t end = count * (w + 1) / workers;
    pool.emplace_back([&, begin, end, w] {
      try {
        fn(begin, end, static_cast<int>(w));
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace simplexlearn
