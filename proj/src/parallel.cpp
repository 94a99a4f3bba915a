#include "halfline/parallel.hpp"

#include <exception>
#include <limits>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace halfline {

namespace {
exec g_mode = exec::parallel;
int g_threads = 0;
}

exec default_exec() { return g_mode; }
void set_default_exec(exec e) { g_mode = e; }

void set_thread_count(int n) {
    g_threads = n < 0 ? 0 : n;
#ifdef _OPENMP
    if (g_threads > 0) omp_set_num_threads(g_threads);
#endif
}

int thread_count() {
#ifdef _OPENMP
    return g_threads > 0 ? g_threads : omp_get_max_threads();
#else
    return 1;
#endif
}

namespace detail {

// Exceptions may not escape an OpenMP region.  Capture the one raised at the
// lowest index (so serial and parallel runs report the same error) and
// rethrow after the loop.
void parallel_for_impl(std::size_t n, void* ctx, void (*body)(void*, std::size_t)) {
    std::exception_ptr first;
    std::size_t first_idx = std::numeric_limits<std::size_t>::max();
    std::mutex mtx;

#ifdef _OPENMP
    // dynamic schedule: per-index cost is wildly uneven (adaptive ODE solves).
    #pragma omp parallel for schedule(dynamic, 1)
#endif
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        try {
            body(ctx, static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(mtx);
            if (static_cast<std::size_t>(i) < first_idx) {
                first_idx = static_cast<std::size_t>(i);
                first = std::current_exception();
            }
        }
    }
    if (first) std::rethrow_exception(first);
}

} // namespace detail
} // namespace halfline
