#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#include "fractel/rng.hpp"

namespace fractel {

// serial is the reference path kept for testing; both must produce
// bit-identical output for the same seed.
enum class Exec { serial, parallel };

// Thread count for parallel runs; honours FRACTEL_THREADS when set.
int thread_count();

inline std::size_t block_count(std::size_t count) { return (count + block_size - 1) / block_size; }

// Calls fn(rng, begin, end) once per block of indices, with an Rng bound to
// stream (seed, block).
template <class Fn>
void for_each_block(std::size_t count, std::uint64_t seed, Exec exec, Fn&& fn) {
  const std::size_t nblocks = block_count(count);
  if (exec == Exec::serial) {
    for (std::size_t b = 0; b < nblocks; ++b) {
      Rng rng(seed, b);
      const std::size_t begin = b * block_size;
      const std::size_t end = begin + block_size < count ? begin + block_size : count;
      fn(rng, begin, end);
    }
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const long long nb = static_cast<long long>(nblocks);
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count())
  for (long long b = 0; b < nb; ++b) {
    try {
      Rng rng(seed, static_cast<std::uint64_t>(b));
      const std::size_t begin = static_cast<std::size_t>(b) * block_size;
      const std::size_t end = begin + block_size < count ? begin + block_size : count;
      fn(rng, begin, end);
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace fractel
