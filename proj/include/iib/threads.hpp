#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace iib {

// IIB_THREADS caps internal parallelism; 0 or unset means auto.
inline int thread_budget() {
  if (const char* env = std::getenv("IIB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs f(0..n-1) across at most thread_budget() threads. Work items must be
// independent; callers merge results by index so scheduling never shows.
template <typename F>
void parallel_for(int n, F&& f) {
  const int workers = std::min(n, thread_budget());
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (int i = w; i < n; i += workers) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace iib
