#pragma once

#include <functional>
#include <vector>

namespace affdecomp {

// Worker-pool size: AFFINE_DECOMP_THREADS when set, hardware concurrency
// otherwise (at least 1).
int worker_count();

// Runs fn(i) for i in [0, n) on the pool and returns results in index order,
// so output is deterministic under any schedule.
template <typename T>
std::vector<T> parallel_map(int n, const std::function<T(int)>& fn);

void parallel_for(int n, const std::function<void(int)>& fn);

template <typename T>
std::vector<T> parallel_map(int n, const std::function<T(int)>& fn) {
    std::vector<T> out(static_cast<size_t>(n));
    parallel_for(n, [&](int i) { out[static_cast<size_t>(i)] = fn(i); });
    return out;
}

}  // namespace affdecomp
