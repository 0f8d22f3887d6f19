#pragma once

#include <cstddef>
#include <functional>

namespace qwalk {

/// Worker threads used by parallel_for. Read from QWALK_WORKERS, otherwise
/// the hardware concurrency; always at least 1.
unsigned worker_count();

/// Calls fn(i) for i in [0, count). Indices are handed out in order; callers
/// write results to slot i so the outcome does not depend on scheduling.
/// The first exception thrown by any call is rethrown after all workers stop.
void parallel_for(std::ptrdiff_t count, const std::function<void(std::ptrdiff_t)>& fn);

}  // namespace qwalk
