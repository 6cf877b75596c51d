#ifndef EXTREMAL_PARALLEL_HPP
#define EXTREMAL_PARALLEL_HPP

#include "extremal/symbolic.hpp"

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace extremal {

/// Trials per task.
inline constexpr std::size_t kChunkSize = 4096;

/// Generator for task `task` of a run with master seed `seed`.
Rng task_rng(std::uint64_t seed, std::uint64_t task);

/// 0 means all hardware threads; the result is never 0.
std::size_t resolve_workers(std::size_t requested);

/// Runs body(task, acc) for task = 0..tasks−1 on up to `workers` threads.
/// Each thread owns one accumulator; they are merged in thread order with
/// merge(into, from). The result is independent of scheduling when merge is
/// exact (integer counts).
template <class Acc, class Body, class Merge>
Acc parallel_reduce(std::size_t tasks, std::size_t workers, const Acc& init, Body&& body, Merge&& merge) {
  workers = resolve_workers(workers);
  if (workers > tasks) workers = tasks == 0 ? 1 : tasks;
  std::vector<Acc> accs(workers, init);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&](std::size_t w) {
    try {
      for (;;) {
        std::size_t task = next.fetch_add(1);
        if (task >= tasks) break;
        body(task, accs[w]);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(tasks);
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  Acc out = init;
  for (auto& a : accs) merge(out, a);
  return out;
}

} // namespace extremal

#endif
