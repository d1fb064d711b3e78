#pragma once

#include <functional>

namespace statgeo {

/// Worker count: LIGHTLIKE_STATGEO_THREADS if set and positive, otherwise the
/// hardware concurrency; always at least 1.
int thread_budget();

/// Runs body(i) for i in [0, n) on up to `threads` workers. Every index runs
/// exactly once; if any throws, the exception of the smallest index is
/// rethrown after all workers finish.
void parallel_for(int n, int threads, const std::function<void(int)>& body);

}  // namespace statgeo
