#pragma once
#include <cstdint>

namespace qcorner::exec {

// Global thread budget for the OpenMP kernels. 1 disables parallelism.
int max_threads();
void set_max_threads(int n);

// Runs f(i) for i in [0, n). Uses OpenMP when the thread budget allows and
// the trip count reaches the grain; plain loop otherwise.
void parallel_for_impl(std::int64_t n, std::int64_t grain, void (*body)(std::int64_t, void*),
                       void* ctx);

template <class F>
void parallel_for(std::int64_t n, std::int64_t grain, F&& f) {
    struct Shim {
        static void call(std::int64_t i, void* ctx) { (*static_cast<F*>(ctx))(i); }
    };
    parallel_for_impl(n, grain, &Shim::call, &f);
}

}  // namespace qcorner::exec
