#pragma once

#include <functional>

namespace acstune {

// Thread count to use when `requested` <= 0: the ACSTUNE_THREADS environment
// variable if set, otherwise the hardware concurrency.
int resolve_threads(int requested);

// Runs fn(0..count-1) on up to `threads` workers. Items must be independent;
// completion order is unspecified. The first exception, if any, is rethrown
// after all workers join.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace acstune
