#pragma once

#include <cstddef>
#include <functional>

namespace ridgeframe {

/// Worker count used by parallel_for. Initialized from RIDGEFRAME_THREADS
/// (0 or unset = hardware concurrency).
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Runs body(i) for i in [0, n). Each index must write only to its own
/// output slot; callers reduce afterwards in index order, so results do not
/// depend on the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ridgeframe
