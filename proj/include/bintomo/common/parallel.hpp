#pragma once

#include <cstddef>
#include <functional>

namespace bintomo {

// Worker count: BINTOMO_THREADS if set, else hardware concurrency.
int default_thread_count();

// Runs fn(begin, end) over a static partition of [0, count) across threads.
// The partition depends only on (count, threads), so reductions done in
// index order are deterministic.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& fn,
                  int threads = 0);

}  // namespace bintomo
