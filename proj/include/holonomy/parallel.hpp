#pragma once

#include <cstddef>
#include <functional>

namespace holonomy {

/// Worker count: HOLONOMY_THREADS when set (at most 256), else hardware concurrency.
int worker_count();

/// Calls fn(begin, end) on disjoint chunks covering [0, n).
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace holonomy
