#pragma once

// Deterministic bounded worker pool.  parallel_map applies a function to each
// index of a range on up to `workers` threads and returns the results in
// input order, so output never depends on scheduling.

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace hclf {

/// Apply fn(i) for i in [0, count) using at most `workers` threads and return
/// the results indexed by i.  Exceptions thrown by fn are rethrown on the
/// calling thread (the first one encountered by index order is preferred).
template <typename R>
std::vector<R> parallel_map(std::size_t count, int workers, const std::function<R(std::size_t)>& fn) {
  std::vector<R> out(count);
  if (count == 0) return out;
  int nthreads = workers < 1 ? 1 : workers;
  if (static_cast<std::size_t>(nthreads) > count) nthreads = static_cast<int>(count);
  if (nthreads == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::size_t err_index = count;
  std::exception_ptr err;
  auto body = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!err || i < err_index) {
          err = std::current_exception();
          err_index = i;
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nthreads));
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace hclf
