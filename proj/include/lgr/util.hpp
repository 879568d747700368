#pragma once
// Shared plumbing: budget guard, deterministic parallel_for, small helpers.

#include <atomic>
#include <cstdint>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace lgr {

// Thrown when an explicit search budget is exhausted. Surfaces as an error
// verdict at the CLI boundary; never a silent wrong answer.
struct budget_error : std::runtime_error {
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// Counts search nodes against a hard cap.
struct BudgetCounter {
  long long cap;
  long long used = 0;
  explicit BudgetCounter(long long cap_) : cap(cap_) {}
  void tick(const char* where) {
    if (++used > cap) throw budget_error(std::string(where) + ": budget exceeded (" + std::to_string(cap) + " nodes)");
  }
};

// Runs fn(i) for i in [0,n); results must be written to pre-sized slots so the
// merge order is by index regardless of scheduling. threads <= 1 runs inline.
inline void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  int workers = std::min(threads, n);
  std::exception_ptr first_error = nullptr;
  std::atomic<bool> failed{false};
  std::mutex mtx;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= n || failed.load()) break;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mtx);
          if (!failed.exchange(true)) first_error = std::current_exception();
          break;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace lgr
