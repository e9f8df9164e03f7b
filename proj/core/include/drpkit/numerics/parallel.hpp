#pragma once

#include <cstddef>
#include <functional>

namespace drpkit::numerics {

/// Worker count from DRPKIT_THREADS (0 or unset = hardware concurrency).
std::size_t default_thread_count();

/// Runs body(i) for i in [0, n) on up to `threads` workers (0 = default).
/// Indices are handed out dynamically; callers write results into slots
/// keyed by i so the outcome does not depend on scheduling. The first
/// exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace drpkit::numerics
