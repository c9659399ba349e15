#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rnaudit {

/// 0 means "one per hardware thread".
inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Reads RN_AUDIT_THREADS (0 or unset = auto).
unsigned threads_from_env();

/// Runs fn(begin, end) over [0, n) split into fixed-size blocks. Block
/// boundaries depend only on n and block_size, never on the thread count, so
/// per-block partial results combined in block order are reproducible.
template <typename Fn>
void parallel_blocks(std::size_t n, std::size_t block_size, unsigned threads, Fn&& fn) {
  if (n == 0) return;
  block_size = std::max<std::size_t>(block_size, 1);
  const std::size_t blocks = (n + block_size - 1) / block_size;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), blocks));
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) {
      fn(b * block_size, std::min(n, (b + 1) * block_size));
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      std::size_t b = next.fetch_add(1);
      if (b >= blocks) return;
      try {
        fn(b * block_size, std::min(n, (b + 1) * block_size));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(blocks);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace rnaudit
