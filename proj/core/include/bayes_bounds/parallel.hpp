#pragma once

#include <cstddef>
#include <functional>

namespace bayes_bounds {

// Upper bound on worker threads used by parallel_for. 0 selects the hardware
// concurrency. The setting is process-wide.
void set_max_threads(unsigned threads);
unsigned max_threads();

// Runs body(begin, end) over a static partition of [0, n). Nested calls made
// from inside a worker run serially on the calling thread. The first
// exception thrown by any chunk is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace bayes_bounds
