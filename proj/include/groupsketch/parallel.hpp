#pragma once

#include <cstddef>
#include <functional>

namespace groupsketch {

// Number of worker threads: hardware concurrency, capped by the
// GROUPSKETCH_THREADS environment variable when set.
std::size_t thread_budget();

// Runs fn(i) for i in [0, count). Work items must be independent; results
// keyed by index stay deterministic regardless of scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace groupsketch
