#pragma once

#include <cstdint>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace specdpp {

/// Caps the OpenMP worker count; n <= 0 restores the default.
void set_thread_count(int n);
int thread_count();

/// body(i) for i in [0, n). Iterations must write disjoint outputs. With
/// parallel = false this is the plain serial loop. An exception
/// thrown by an iteration is rethrown on the calling thread.
template <class Body>
void parallel_for(std::int64_t n, bool parallel, Body&& body) {
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(specdpp_parallel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace specdpp
