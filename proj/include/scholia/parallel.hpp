#pragma once

#include <cstddef>
#include <exception>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace scholia {

// The compute kernels (chain verification, Merkle levels, influence sweeps,
// pairwise similarity, simulation sweeps) come in two equivalent flavors: a
// serial reference kept for testing, and an OpenMP path used by default.
// Both produce bit-identical results; tests assert that and the bench tool
// compares their runtime.
enum class ExecMode {
  Serial,
  Parallel,
};

// Apply fn(i) for i in [0, n). Iterations must be independent; each writes
// only its own outputs, so results do not depend on scheduling. An
// exception from any iteration is re-thrown on the calling thread after
// the sweep (OpenMP would otherwise terminate on an escaping exception);
// which one wins is unspecified when several iterations throw.
template <typename Fn>
void parallel_for(std::size_t n, ExecMode mode, Fn&& fn) {
#if defined(_OPENMP)
  if (mode == ExecMode::Parallel) {
    std::exception_ptr failure = nullptr;
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; i++) {
      try {
        fn(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(scholia_parallel_for_failure)
        if (failure == nullptr) failure = std::current_exception();
      }
    }
    if (failure != nullptr) std::rethrow_exception(failure);
    return;
  }
#else
  (void)mode;
#endif
  for (std::size_t i = 0; i < n; i++) {
    fn(i);
  }
}

}  // namespace scholia
