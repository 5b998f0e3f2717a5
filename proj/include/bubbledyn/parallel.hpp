#pragma once

#include <cstddef>
#include <functional>

namespace bubbledyn {

// Worker count from BUBBLEDYN_THREADS (0 or unset = hardware concurrency).
unsigned default_worker_count();

// Resolves 0 to default_worker_count().
unsigned resolve_workers(unsigned requested);

// Runs body(i) for i in [0, count) on up to `workers` threads. Items are
// claimed dynamically; callers write to disjoint slots so the result does not
// depend on scheduling. The first exception thrown by a body is rethrown.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace bubbledyn
