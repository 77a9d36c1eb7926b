#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace kuostab {

/// Worker count: KUO_STAB_THREADS if set, else `requested`, where 0 means
/// the hardware concurrency.
int resolve_threads(int requested);

/// Process-wide default used by sweeps that do not take a thread count.
void set_default_threads(int threads);
int default_threads();

/// Evaluates f(i) for i in [0, n) on up to `threads` workers. Results keep
/// input order; the first exception thrown by any task is rethrown.
template <class F>
auto parallel_map(std::size_t n, F&& f, int threads = 0) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<R> out(n);
  const int workers = std::max(1, std::min<int>(resolve_threads(threads), static_cast<int>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = f(i);
    }
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) {
        return;
      }
      try {
        out[i] = f(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) {
          error = std::current_exception();
        }
        next.store(n);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back(work);
  }
  for (auto& th : pool) {
    th.join();
  }
  if (error) {
    std::rethrow_exception(error);
  }
  return out;
}

}  // namespace kuostab
