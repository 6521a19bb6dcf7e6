#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace colorsim {

/// Worker count: COLORSIM_THREADS caps it, hardware concurrency is the
/// default.
inline unsigned worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("COLORSIM_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && static_cast<unsigned>(v) < hw) hw = static_cast<unsigned>(v);
    if (v >= 1 && static_cast<unsigned>(v) > hw) hw = static_cast<unsigned>(v);
  }
  return hw;
}

/// Runs fn(i) for i in [0, n). Work items must be independent; results must
/// be written to disjoint slots so the output is deterministic regardless of
/// scheduling.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  unsigned workers = worker_count();
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  if (workers > n) workers = static_cast<unsigned>(n);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w]() {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : threads) t.join();
}

}  // namespace colorsim
