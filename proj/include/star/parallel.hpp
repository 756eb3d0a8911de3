#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace star {

// 0 means: STAR_ROUTE_THREADS if set, else 1.
unsigned resolve_threads(unsigned requested);

// Runs body(i) for i in [0, n) on up to `threads` workers. Results must be
// written to per-index slots; the exception from the lowest failing index is
// rethrown so failures are independent of scheduling.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace star
