#pragma once

#include <cstddef>
#include <functional>

namespace dk {

// Worker count from the DKTOPO_WORKERS environment variable, else the
// hardware concurrency (at least 1).
unsigned default_worker_count();

// Runs fn(block) for block in [0, num_blocks) on up to `workers` threads
// (0 = default_worker_count()). Blocks are handed out dynamically; callers
// that need results independent of the worker count store per-block partials
// and reduce them in block order.
void parallel_for_blocks(std::size_t num_blocks, unsigned workers,
                         const std::function<void(std::size_t)>& fn);

}  // namespace dk
