#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nilweier {

// Worker count: hardware concurrency, capped by NILWEIER_THREADS when set.
inline int thread_budget() {
  int n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("NILWEIER_THREADS")) {
    const int c = std::atoi(cap);
    if (c >= 1) n = std::min(n, c);
  }
  return n;
}

// Runs f(i) for i in [0, n); the first exception is rethrown after joining.
template <class F>
void parallel_for(int n, F&& f, int threads = 0) {
  if (threads <= 0) threads = thread_budget();
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < n; i += threads) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace nilweier
