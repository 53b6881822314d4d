#pragma once

#include <cstddef>
#include <functional>

namespace padic {

/// Worker count: PADIC_STRINGS_THREADS if set to a positive integer,
/// otherwise the hardware concurrency (at least 1).
unsigned worker_count();

/// Calls f(i) for i in [0, n) on up to worker_count() threads. Each index is
/// handled exactly once; callers write results by index, so output order does
/// not depend on scheduling. The exception from the lowest failing index is
/// rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

}  // namespace padic
