#include "depthtrack/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace depthtrack {

namespace {
std::atomic<int> g_num_threads{0};
}

void set_num_threads(int n) { g_num_threads.store(n < 0 ? 0 : n); }

int num_threads() {
  const int n = g_num_threads.load();
  if (n > 0) {
    return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) {
    return;
  }
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(num_threads()), n);
  if (workers <= 1) {
    fn(0, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> threads;
  threads.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin < end) {
      threads.emplace_back(fn, begin, end);
    }
  }
  fn(0, std::min(n, chunk));
  for (auto& t : threads) {
    t.join();
  }
}

}  // namespace depthtrack
