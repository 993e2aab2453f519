#pragma once

#include <cstddef>
#include <functional>

namespace sentopic {

// Runs fn(i) for i in [0, n) on up to `threads` worker threads. Work items
// must be independent; results should be written to pre-sized slots indexed
// by i so that output is identical for any thread count. threads <= 1 runs
// inline.
void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace sentopic
