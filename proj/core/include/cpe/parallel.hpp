#pragma once

#include <cstddef>
#include <functional>

namespace cpe {

/// Hardware concurrency, overridden by the CPE_NUM_THREADS environment variable.
std::size_t default_thread_count();

/// Runs body(begin, end) over [0, n) on at most `threads` workers with dynamic
/// (work-stealing) distribution. threads == 0 means default_thread_count().
void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace cpe
