#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace lambdabv {

// Worker cap from LAMBDA_BV_THREADS (default: hardware concurrency, at most 8).
inline int thread_budget() {
  if (const char* env = std::getenv("LAMBDA_BV_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(hw == 0 ? 1 : std::min(hw, 8u));
}

// Runs fn(i) for i in [0, n). Each index writes only to its own output slot,
// so aggregation stays deterministic regardless of the worker count.
template <typename Fn>
void parallel_for(long long n, Fn&& fn) {
  const int workers = std::min<long long>(thread_budget(), n);
  if (workers <= 1) {
    for (long long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<long long> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (long long i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace lambdabv
