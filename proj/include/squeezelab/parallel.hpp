#pragma once

#include <cstddef>
#include <functional>

namespace squeezelab::parallel {

/// Worker count: hardware concurrency, capped by SQUEEZELAB_THREADS when set.
std::size_t thread_count();

/// Runs body(i) for i in [0, n). Each index is handled by exactly one worker,
/// so writes to per-index output slots need no synchronization. The first
/// exception (lowest index) is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace squeezelab::parallel
