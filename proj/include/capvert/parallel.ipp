#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

namespace capvert {

template <class R>
std::vector<R> parallel_map(std::size_t n, int jobs, const std::function<R(std::size_t)>& fn) {
  std::vector<std::optional<R>> slots(n);
  const std::size_t workers = std::min<std::size_t>(n, jobs < 1 ? 1 : static_cast<std::size_t>(jobs));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) slots[i].emplace(fn(i));
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            slots[i].emplace(fn(i));
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace capvert
