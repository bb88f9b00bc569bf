#include "dk/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace dk {

unsigned default_worker_count() {
  if (const char* env = std::getenv("DKTOPO_WORKERS")) {
    try {
      const long value = std::stol(env);
      if (value > 0) return static_cast<unsigned>(value);
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for_blocks(std::size_t num_blocks, unsigned workers,
                         const std::function<void(std::size_t)>& fn) {
  if (workers == 0) workers = default_worker_count();
  const auto threads = static_cast<unsigned>(std::min<std::size_t>(workers, num_blocks));
  if (threads <= 1) {
    for (std::size_t b = 0; b < num_blocks; ++b) fn(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t b = next++; b < num_blocks; b = next++) {
      try {
        fn(b);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = num_blocks;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace dk
