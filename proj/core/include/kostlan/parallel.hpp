#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace kostlan {

/// Calls body(i) for i in [0, count) on up to `threads` workers.  Each index is
/// visited once; the first exception by index order is rethrown.
template <class Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::size_t> error_index(workers, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          if (i < error_index[w]) {
            error_index[w] = i;
            errors[w] = std::current_exception();
          }
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  std::size_t best = count;
  std::exception_ptr first;
  for (std::size_t w = 0; w < workers; ++w) {
    if (errors[w] && error_index[w] < best) {
      best = error_index[w];
      first = errors[w];
    }
  }
  if (first) std::rethrow_exception(first);
}

}  // namespace kostlan
