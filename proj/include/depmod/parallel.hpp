#pragma once

#include <functional>

namespace depmod {

// Worker cap: DEPMOD_THREADS if set (at least 1), otherwise the hardware
// concurrency. Never changes results, only wall time.
int worker_count();

// Runs fn(i) for i in [0, n). Work items must be independent and write to
// disjoint slots; the partition across threads is irrelevant to the result.
void parallel_for(long n, const std::function<void(long)>& fn);

}  // namespace depmod
