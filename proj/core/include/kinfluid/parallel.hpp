#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace kinfluid {

/// Thread cap from KINFLUID_THREADS (read once), clamped to [1, hardware].
int max_threads();

/// When enabled, internal loops run single-threaded. Gather loops are
/// bit-deterministic at any thread count (every index writes its own slot);
/// reductions and deposits are always sequential.
void set_deterministic_execution(bool on);
bool deterministic_execution();

/// Static-partition parallel loop; fn(i) must only touch slot i.
template <class F>
void parallel_for(std::size_t count, F&& fn) {
  const int threads = deterministic_execution() ? 1 : max_threads();
  if (threads <= 1 || count < 16384) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  const std::size_t chunk = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace kinfluid
