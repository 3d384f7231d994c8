#pragma once

#include <cstddef>
#include <functional>

namespace ardn {

// Worker count: ARDN_THREADS if set, else hardware concurrency.
std::size_t worker_count();

// Runs fn(0..count-1) split into contiguous chunks. Only used where iterations
// write disjoint outputs, so results do not depend on the number of workers.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace ardn
