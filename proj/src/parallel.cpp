#include "depmod/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace depmod {

int worker_count() {
  if (const char* env = std::getenv("DEPMOD_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) return std::min(cap, 64);
  }
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  return std::min(n, 16);
}

void parallel_for(long n, const std::function<void(long)>& fn) {
  const int workers = worker_count();
  if (workers <= 1 || n < 256) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<long> next(0);
  const long chunk = std::max<long>(1, n / (8 * workers));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const long begin = next.fetch_add(chunk);
        if (begin >= n) return;
        const long end = std::min(n, begin + chunk);
        for (long i = begin; i < end; ++i) fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace depmod
