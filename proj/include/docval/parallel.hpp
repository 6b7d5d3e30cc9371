#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace docval {

// Runs fn(i) for i in [0, count) on up to `concurrency` threads. Each index is
// processed exactly once; callers keep determinism by writing fn(i)'s result
// to a slot that depends only on i. The first exception wins and is rethrown
// after all workers drain.
template <typename Fn>
void parallel_for(std::int64_t count, int concurrency, Fn&& fn) {
  if (count <= 0) return;
  if (concurrency < 1) concurrency = 1;
  int workers = static_cast<int>(std::min<std::int64_t>(concurrency, count));

  if (workers == 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mu;
  std::exception_ptr error;
  auto body = [&] {
    for (;;) {
      std::int64_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace docval
