#include "qcorner/exec.hpp"

#include <algorithm>
#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qcorner::exec {

namespace {
std::atomic<int> g_max_threads{0};  // 0 = not set, use runtime default

int default_threads() {
#ifdef _OPENMP
    return std::max(1, omp_get_max_threads());
#else
    return 1;
#endif
}
}  // namespace

int max_threads() {
    int n = g_max_threads.load(std::memory_order_relaxed);
    return n > 0 ? n : default_threads();
}

void set_max_threads(int n) { g_max_threads.store(n, std::memory_order_relaxed); }

void parallel_for_impl(std::int64_t n, std::int64_t grain, void (*body)(std::int64_t, void*),
                       void* ctx) {
#ifdef _OPENMP
    const int threads = max_threads();
    if (threads > 1 && n >= grain && !omp_in_parallel()) {
#pragma omp parallel for num_threads(threads) schedule(static)
        for (std::int64_t i = 0; i < n; ++i) body(i, ctx);
        return;
    }
#endif
    for (std::int64_t i = 0; i < n; ++i) body(i, ctx);
}

}  // namespace qcorner::exec
