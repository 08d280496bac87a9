#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>

#include "fractel/errors.hpp"
#include "fractel/verify.hpp"

namespace fractel {

namespace {
// FFTW planning is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

GridFunction riesz_spectral(const GridFunction& f, double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("riesz_spectral: beta in (0, 1]");
  const std::size_t n = f.grid.size();
  if (n < 8 || f.values.size() != n) throw ContractError("riesz_spectral: need >= 8 matching samples");
  const double h = (f.grid.back() - f.grid.front()) / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i)
    if (std::fabs(f.grid[i] - f.grid[i - 1] - h) > 1e-9 * h) throw ContractError("riesz_spectral: grid is not uniform");
  const double edge = std::max(std::fabs(f.values.front()), std::fabs(f.values.back()));
  double peak = 0.0;
  for (double v : f.values) peak = std::max(peak, std::fabs(v));
  if (edge > 1e-8 * peak) throw ContractError("riesz_spectral: f has not decayed at the interval ends");

  const std::size_t m = n / 2 + 1;
  double* in = fftw_alloc_real(n);
  fftw_complex* spec = fftw_alloc_complex(m);
  fftw_plan fwd, bwd;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, spec, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_1d(static_cast<int>(n), spec, in, FFTW_ESTIMATE);
  }
  std::copy(f.values.begin(), f.values.end(), in);
  fftw_execute(fwd);
  const double period = h * static_cast<double>(n);
  for (std::size_t k = 0; k < m; ++k) {
    const double xi = 2.0 * std::numbers::pi * static_cast<double>(k) / period;
    const double mult = -std::pow(xi, 2.0 * beta) / static_cast<double>(n);
    spec[k][0] *= mult;
    spec[k][1] *= mult;
  }
  fftw_execute(bwd);
  GridFunction out{f.grid, std::vector<double>(in, in + n)};
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
  fftw_free(in);
  fftw_free(spec);
  return out;
}

}  // namespace fractel
