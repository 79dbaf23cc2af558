#ifndef FRILAB_PARALLEL_HPP
#define FRILAB_PARALLEL_HPP

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace frilab {

inline int env_thread_count() {
  if (const char* s = std::getenv("FRILAB_THREADS")) {
    int n = std::atoi(s);
    if (n >= 1) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

/**
 * Static block partition of [0, n) across threads. Each index must write only
 * its own output slot and draw from its own RngStream, so results are
 * identical for every thread count.
 */
template <class F>
void parallel_for(int64_t n, F&& f, int threads = 0) {
  if (threads <= 0) threads = env_thread_count();
  if (threads > n) threads = static_cast<int>(n);
  if (n <= 0) return;
  if (threads <= 1) {
    for (int64_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  std::exception_ptr error;
  std::mutex err_mu;
  for (int t = 0; t < threads; ++t) {
    int64_t lo = n * t / threads, hi = n * (t + 1) / threads;
    pool.emplace_back([&, lo, hi] {
      try {
        for (int64_t i = lo; i < hi; ++i) f(i);
      } catch (...) {
        std::lock_guard<std::mutex> g(err_mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace frilab

#endif  // FRILAB_PARALLEL_HPP
