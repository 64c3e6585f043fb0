#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace scj {

/// Worker count: `requested` if positive, else the hardware concurrency.
inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

/// Runs fn(chunk) for chunk in [0, n_chunks) on a pool of threads.
/// Chunks are claimed dynamically; callers write results into per-chunk
/// slots so the reduction order never depends on scheduling.
template <class Fn>
void parallel_chunks(std::size_t n_chunks, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(resolve_threads(threads),
                                            static_cast<unsigned>(std::max<std::size_t>(n_chunks, 1))));
  if (threads == 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) fn(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      if (failed.load()) return;
      const std::size_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      try {
        fn(c);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace scj
