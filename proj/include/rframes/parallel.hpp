#pragma once

#include <cstddef>
#include <functional>

namespace rframes {

/// Worker cap: REDUCTION_FRAMES_THREADS if set to a positive integer,
/// otherwise std::thread::hardware_concurrency() (at least 1).
unsigned worker_count();

/// Runs task(i) for i in [0, n) on up to `workers` threads (0 = worker_count()).
/// Tasks must write to disjoint outputs; callers reduce in index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task,
                  unsigned workers = 0);

}  // namespace rframes
