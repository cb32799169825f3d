#pragma once

#include <cstddef>
#include <functional>

namespace swgp {

// Worker count for sweep parallelization: SWGP_THREADS when set (minimum 1),
// otherwise the hardware concurrency.
std::size_t worker_count();

// Runs fn(0..n-1) across workers. Tasks must write disjoint slots; results
// are then deterministic regardless of scheduling. The first exception
// thrown by a task is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace swgp
