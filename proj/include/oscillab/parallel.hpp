#pragma once

#include <cstddef>
#include <functional>

namespace oscillab {

/// Worker count: OSCILLAB_THREADS if set and positive, else the hardware
/// concurrency (at least 1).
std::size_t thread_count();

/// Runs body(i) for i in [0, count). Each index is handled exactly once; the
/// caller writes results into per-index slots, so output never depends on
/// scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace oscillab
