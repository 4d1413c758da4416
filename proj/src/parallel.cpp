#include "qcorr/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qcorr {

int worker_count() {
#ifdef _OPENMP
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("QCORR_THREADS")) {
    int requested = 0;
    const auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), requested);
    if (ec == std::errc{} && requested > 0 && requested < n) n = requested;
  }
  return n > 0 ? n : 1;
#else
  return 1;
#endif
}

}  // namespace qcorr
