#pragma once

// Thin OpenMP helpers. Kernels write into per-index slots and reduce
// serially afterwards, so parallel and serial runs give bit-identical results.

#include <cstddef>
#include <exception>
#include <mutex>

#include <omp.h>

namespace psifrac {

/// Runs body(i) for i in [0, count). Parallel unless already inside a
/// parallel region. The first exception thrown by any iteration is rethrown
/// on the calling thread.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1) if (!omp_in_parallel() && count > 1)
    for (long long i = 0; i < n; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

/// Caps the OpenMP team size; 0 leaves the runtime default.
inline void set_thread_cap(int threads) {
    if (threads > 0) omp_set_num_threads(threads);
}

} // namespace psifrac
