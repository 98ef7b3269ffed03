#ifndef QSM_PARALLEL_HPP
#define QSM_PARALLEL_HPP

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qsm {

enum class Exec { serial, parallel };

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline bool inside_parallel_region() {
#ifdef _OPENMP
  return omp_in_parallel() != 0;
#else
  return false;
#endif
}

/// Runs body(i) for i in [0, n). Exceptions thrown inside the parallel
/// region are captured and rethrown on the calling thread; the first one
/// wins. Falls back to a plain loop when already nested in a parallel
/// region or when OpenMP is unavailable.
template <class Body>
void parallel_for(long n, Exec exec, Body&& body) {
  if (n <= 0) return;
#ifdef _OPENMP
  if (exec == Exec::parallel && !inside_parallel_region() && n > 1) {
    std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
#pragma omp critical(qsm_parallel_for_err)
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    return;
  }
#else
  (void)exec;
#endif
  for (long i = 0; i < n; ++i) body(i);
}

}  // namespace qsm

#endif
