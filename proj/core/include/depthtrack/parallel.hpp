#pragma once

#include <cstddef>
#include <functional>

namespace depthtrack {

/// Global worker count for data-parallel loops. 0 restores the hardware
/// default. Changing the count never changes results: work items write to
/// disjoint slots only.
void set_num_threads(int n);
int num_threads();

/// Runs fn(begin, end) over a static contiguous partition of [0, n).
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace depthtrack
