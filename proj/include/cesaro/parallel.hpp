#ifndef CESARO_PARALLEL_HPP
#define CESARO_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace cesaro {

// Worker count: CESARO_LAB_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
unsigned worker_count();

// Calls fn(i) for i in [0, n) on up to worker_count() threads. Each index is
// visited exactly once; callers write results into slot i, so the outcome does
// not depend on scheduling. If calls throw, the exception from the lowest
// failing index is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace cesaro

#endif  // CESARO_PARALLEL_HPP
