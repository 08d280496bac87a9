#include "fractel/parallel.hpp"

#include <omp.h>

#include <cstdlib>

namespace fractel {

int thread_count() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("FRACTEL_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0 && cap < n) n = cap;
  }
  return n < 1 ? 1 : n;
}

}  // namespace fractel
