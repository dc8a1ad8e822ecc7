#pragma once

#include <cstddef>
#include <functional>

namespace ibmetric {

/// 0 means "all hardware threads"; the result is always >= 1.
unsigned resolve_threads(unsigned requested);

/// Calls body(i) for every i in [0, count) on up to `threads` workers. Each
/// index is visited exactly once; callers write results into per-index slots
/// so the outcome does not depend on scheduling. The first exception thrown
/// by a body is rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace ibmetric
