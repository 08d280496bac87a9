#pragma once

#include <cstdint>
#include <random>

namespace fractel {

// Draws are generated in fixed-size blocks; block b of a run seeded with s
// always uses stream (s, b), so output does not depend on thread count.
inline constexpr std::size_t block_size = 1024;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  // Uniform on the open interval (0, 1).
  double uniform();
  double normal() { return normal_(engine_); }
  double exponential() { return expo_(engine_); }
  std::uint64_t poisson(double mean);
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> unif_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::exponential_distribution<double> expo_{1.0};
};

}  // namespace fractel
