#pragma once

#include <cstddef>
#include <functional>

namespace cipherid {

/// Number of workers to use for a requested cap (0 = hardware default).
int effective_threads(int requested);

/// Runs fn(i) for i in [0, count) across up to `threads` workers with
/// static chunking. Results must be written to preallocated slots keyed
/// by i, so the outcome is identical for any thread count. The first
/// exception thrown by any task is rethrown after all workers join.
void parallel_for(size_t count, int threads,
                  const std::function<void(size_t)>& fn);

}  // namespace cipherid
