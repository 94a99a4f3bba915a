#ifndef HALFLINE_PARALLEL_HPP
#define HALFLINE_PARALLEL_HPP

#include <cstddef>

namespace halfline {

/// Execution mode for the data-parallel kernels.  All kernels write results
/// into index-addressed slots and reduce in index order afterwards, so the
/// two modes produce bit-identical output; `serial` is kept as the reference
/// path for tests and benchmarking.
enum class exec { serial, parallel };

/// Process-wide default used by kernels that are not handed a mode explicitly.
exec default_exec();
void set_default_exec(exec e);

/// Number of worker threads the parallel mode will use (OpenMP); 0 = runtime default.
void set_thread_count(int n);
int thread_count();

namespace detail {
void parallel_for_impl(std::size_t n, void* ctx, void (*body)(void*, std::size_t));
}

/// Run body(i) for i in [0, n).  Bodies must be independent; any shared
/// output must be slot-addressed by i.
template <class F>
void parallel_for(std::size_t n, F&& body, exec mode) {
    if (mode == exec::serial) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    auto thunk = [](void* ctx, std::size_t i) { (*static_cast<F*>(ctx))(i); };
    detail::parallel_for_impl(n, const_cast<void*>(static_cast<const void*>(&body)), thunk);
}

template <class F>
void parallel_for(std::size_t n, F&& body) {
    parallel_for(n, static_cast<F&&>(body), default_exec());
}

} // namespace halfline

#endif
