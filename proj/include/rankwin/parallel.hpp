#pragma once

#include <cstddef>
#include <functional>

namespace rankwin {

// Thread count from RANKWIN_THREADS, defaulting to 1.
std::size_t default_thread_count();

// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
// handled exactly once; callers write results by index so the outcome does
// not depend on scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace rankwin
