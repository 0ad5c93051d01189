#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace tariffot {

/// Runs fn(i) for i in [0, count) across hardware threads. Work items must
/// be independent; each writes only its own output slot, so results do not
/// depend on scheduling. The first exception is rethrown on the caller.
inline void parallel_for(int count, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  unsigned hw = std::thread::hardware_concurrency();
  int workers = std::max(1, std::min<int>(count, hw == 0 ? 1 : (int)hw));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error = nullptr;
  std::mutex error_mutex;
  auto body = [&]() {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace tariffot
