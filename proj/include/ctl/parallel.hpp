#pragma once

#include <cstddef>
#include <functional>

namespace ctl {

/// Worker count: `requested` if non-zero, else CTL_THREADS, else hardware concurrency.
unsigned resolve_threads(unsigned requested);

/// Runs body(begin, end) over [0, count) split into contiguous chunks, one per
/// worker. Callers write results into per-index slots so the outcome does not
/// depend on the worker count.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace ctl
