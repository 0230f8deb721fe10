#include "bintomo/common/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace bintomo {

int default_thread_count() {
  if (const char* env = std::getenv("BINTOMO_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& fn,
                  int threads) {
  if (count == 0) return;
  const std::size_t workers = std::min<std::size_t>(
      threads > 0 ? static_cast<std::size_t>(threads)
                  : static_cast<std::size_t>(default_thread_count()),
      count);
  if (workers <= 1) {
    fn(0, count);
    return;
  }
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace bintomo
