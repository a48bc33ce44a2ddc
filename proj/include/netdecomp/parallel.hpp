#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace netdecomp {

namespace detail {
inline thread_local bool in_parallel_region = false;
inline std::atomic<int> thread_override{0};
}  // namespace detail

/// Worker cap: an explicit override if set, else NETDECOMP_THREADS, else the
/// hardware concurrency.
inline int max_threads() {
  if (int o = detail::thread_override.load(); o > 0) return o;
  if (const char* env = std::getenv("NETDECOMP_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline void set_max_threads(int threads) { detail::thread_override.store(threads); }

/// Runs fn(i) for i in [0, count). Each index must write only to its own
/// output slot; results are then independent of scheduling. Nested calls run
/// inline on the calling worker.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  int threads = max_threads();
  if (count < 2 || threads < 2 || detail::in_parallel_region) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    detail::in_parallel_region = true;
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) break;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
    detail::in_parallel_region = false;
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace netdecomp
