#pragma once

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace phshape {

// Thread budget for OpenMP kernels. PHSHAPE_THREADS caps it; 0/unset means
// the OpenMP default. Every parallel kernel must produce output identical to
// its serial reference regardless of this value.
inline int thread_budget() {
#ifdef _OPENMP
    if (const char* env = std::getenv("PHSHAPE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace phshape
