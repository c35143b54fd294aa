#pragma once

#include <cstddef>
#include <functional>

namespace hidaprop {

// Number of worker threads to use: HIDAPROP_THREADS if set (clamped to at
// least 1), otherwise the hardware concurrency.
int thread_cap();

// Runs fn(begin, end) over a contiguous partition of [0, n) across up to
// thread_cap() threads. fn must be safe to run concurrently on disjoint
// ranges. Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace hidaprop
