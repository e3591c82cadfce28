#pragma once

#include <cstddef>
#include <functional>

namespace rwrs {

/// Number of worker threads used when a caller passes 0.
unsigned default_threads();

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = all
/// cores). Work items must be independent; the first exception thrown by
/// any item is rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace rwrs
