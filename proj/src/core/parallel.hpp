// Evaluation-side parallelism. HOLOWORLD_THREADS caps the worker count;
// when it is unset, everything runs single-threaded. Work items write to
// disjoint slots, so results never depend on the thread count.
#pragma once

#include <cstddef>
#include <functional>

namespace holo {

/// Worker cap from HOLOWORLD_THREADS (absent or invalid -> 1).
std::size_t eval_threads();

/// Run fn(i) for i in [0, n). With eval_threads() == 1 this is a plain loop;
/// otherwise indices are split into contiguous chunks across threads.
/// fn must confine its writes to slot i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace holo
