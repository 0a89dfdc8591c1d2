#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ap3 {

// Worker count: AP3_THREADS if set to a positive integer, otherwise the
// hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("AP3_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs task(i) for every i in [0, count). Tasks must write to disjoint
// outputs; callers reduce afterwards in index order so results never depend
// on the thread count. The first exception thrown by a task is rethrown.
template <typename Task>
void parallel_for(std::size_t count, Task&& task) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// Pairwise sum, fixed association for a given input length.
template <typename T>
T pairwise_sum(const std::vector<T>& xs, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 8) {
    T acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += xs[i];
    return acc;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(xs, lo, mid) + pairwise_sum(xs, mid, hi);
}

template <typename T>
T pairwise_sum(const std::vector<T>& xs) {
  return pairwise_sum(xs, 0, xs.size());
}

}  // namespace ap3
