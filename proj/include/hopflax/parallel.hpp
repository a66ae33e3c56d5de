#pragma once

#include <cstddef>
#include <functional>

namespace hopflax {

/// Worker count for batch loops: HOPFLAX_THREADS when set (>= 1), otherwise
/// std::thread::hardware_concurrency().
int worker_count();

/// Runs fn over contiguous index chunks [begin, end) on up to worker_count()
/// threads. Exceptions from workers are rethrown on the calling thread.
/// Callers are responsible for writing results by index so that the outcome
/// does not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace hopflax
