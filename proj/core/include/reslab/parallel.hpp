#pragma once

#include <cstddef>
#include <functional>

namespace reslab {

/// 0 means: RESLAB_THREADS if set and positive, else hardware concurrency.
unsigned resolve_threads(unsigned requested);

/// Calls fn(i) for i in [0, n) on up to `threads` workers. Each index is
/// handled exactly once; callers write into per-index slots so the result
/// does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace reslab
