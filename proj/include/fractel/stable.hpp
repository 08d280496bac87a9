#pragma once

#include <span>

#include "fractel/parallel.hpp"
#include "fractel/rng.hpp"
#include "fractel/sample.hpp"

namespace fractel {

// One-sided stable subordinator H^nu at time t: E e^{-mu H} = e^{-t mu^nu}.
struct SubordinatorSpec {
  double nu = 0.5;
  double t = 1.0;
};

// Isotropic vector with characteristic function e^{-t |xi|^{2 beta}}.
struct IsotropicStableSpec {
  double beta = 1.0;
  int n = 1;
  double t = 1.0;
};

// Orders 1/3, 1/2 and 2/3 have closed or Airy-type forms. Other orders go
// through slow series and must be asked for explicitly.
enum class DensityRoute { fast_only, allow_slow };

// Unit-time draw, Laplace transform e^{-mu^nu}, 0 < nu <= 1 (nu = 1 is the
// unit drift).
double draw_one_sided_stable(double nu, Rng& rng);

// Writes n coordinates of S_n^{2 beta}(t) = B_n(H^beta(t)), where B_n has
// per-coordinate variance 2s at time s.
void draw_isotropic_stable(double beta, int n, double t, Rng& rng, double* out);

SampleBatch sample_subordinator(const SubordinatorSpec& spec, std::size_t count, std::uint64_t seed,
                                Exec exec = Exec::parallel);

SampleBatch sample_isotropic_stable(const IsotropicStableSpec& spec, std::size_t count,
                                    std::uint64_t seed, Exec exec = Exec::parallel);

double stable_char(const IsotropicStableSpec& spec, std::span<const double> xi);

// h_nu(x, t): density of H^nu(t) at x.
double subordinator_density(double nu, double x, double t,
                            DensityRoute route = DensityRoute::fast_only);

// l_nu(x, t): density of the inverse L^nu(t) = inf{s : H^nu(s) >= t} at x.
double inverse_stable_density(double nu, double x, double t,
                              DensityRoute route = DensityRoute::fast_only);

// K(a) = int_0^inf e^{-w} w^{-1/6} Ai(-a w^{1/3}) dw, the kernel shared by
// the order-2/3 densities; w is cut at 40. The plain version is served from
// a Chebyshev interpolant of the direct quadrature on [0, 9] (built once),
// and falls back to quadrature outside it.
double airy_kernel_two_thirds(double a);
double airy_kernel_two_thirds_direct(double a);

// True when nu is one of the orders with a fast density path.
bool has_fast_density(double nu);

}  // namespace fractel
