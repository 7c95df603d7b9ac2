#pragma once

#include <cstddef>
#include <functional>

namespace speclab {

/// Worker count: SPECLAB_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, n) across worker_count() threads. Each index is
/// visited exactly once; callers write results into index-addressed slots so
/// output order never depends on scheduling. The first exception thrown by any
/// worker is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace speclab
