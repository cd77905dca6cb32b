#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

// Execution policy for the data-parallel kernels (grid scans, body batches,
// per-cell field work). Every kernel has a serial reference path; tests
// assert the two produce identical results, and tools/bench compares times.
//
// Determinism contract: parallel loops only write to disjoint indices, and
// any reduction (argmin, row assembly) happens serially in index order
// afterwards, so results are bit-identical regardless of thread schedule.

namespace bmr {

enum class Exec { serial, parallel };

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

template <class F>
void for_index(Exec exec, std::size_t n, F&& f) {
    if (exec == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long long i = 0; i < (long long)n; ++i) f((std::size_t)i);
    } else {
        for (std::size_t i = 0; i < n; ++i) f(i);
    }
}

}  // namespace bmr
