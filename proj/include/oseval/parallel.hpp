#pragma once

#include <cstddef>
#include <functional>

namespace oseval {

/// Worker cap: OSEVAL_THREADS when set to a positive integer, otherwise the
/// number of available cores (at least 1).
unsigned worker_count();

/// Calls `body(i)` for every i in [0, n) using up to `workers` threads. Each
/// index is visited exactly once; callers write results into per-index slots
/// so the outcome does not depend on scheduling.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace oseval
