#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace sedosc {

// Runs fn(i) for i in [0, count) on up to `threads` workers (0 = hardware
// concurrency). Each index is claimed exactly once; callers get determinism
// by writing to per-index slots. The first exception is rethrown.
template <typename Fn>
void parallel_for_index(std::size_t count, int threads, Fn&& fn) {
  unsigned n_workers = threads > 0
                           ? static_cast<unsigned>(threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  n_workers = std::min<unsigned>(n_workers, count > 0 ? count : 1);

  if (n_workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};

  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(n_workers);
  for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  pool.clear();  // join

  if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace sedosc
