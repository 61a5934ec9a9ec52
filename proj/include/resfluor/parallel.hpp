// Minimal chunked parallel loop. Thread count comes from the THREADS
// environment variable when set, otherwise hardware concurrency. Work is
// split into contiguous index ranges so results never depend on the thread
// count.
#pragma once

#include <cstddef>
#include <functional>

namespace resfluor {

std::size_t thread_count();

// fn(begin, end) is invoked on disjoint contiguous ranges covering [0, n).
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace resfluor
