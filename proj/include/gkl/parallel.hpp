#pragma once

// Fixed-partition parallel loops. Work items are identified by index and
// results are written to per-index slots, so the outcome never depends on
// the schedule.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gkl {

// Thread count: GKL_THREADS if set, else the value from set_thread_count,
// else the hardware concurrency.
std::size_t thread_count();
void set_thread_count(std::size_t n);  // 0 restores the default

// Calls body(i) for i in [0, n). If any call throws, the exception from the
// lowest failing index is rethrown after all workers finish.
template <class F>
void parallel_for(std::size_t n, F&& body) {
  const std::size_t workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::size_t err_index = n;
  std::exception_ptr err;
  auto run = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace gkl
