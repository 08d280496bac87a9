#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fractel/parallel.hpp"
#include "fractel/sample.hpp"

namespace fractel {

struct TelegraphSpec {
  double lambda = 1.0;  // Poisson rate of direction changes
  double c = 1.0;       // speed
};

void validate(const TelegraphSpec& spec);

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

// Uniform mass on the circle of the given radius.
struct Arc {
  double radius = 0.0;
  double mass = 0.0;
};

// Absolutely continuous part tabulated on `points` (coordinates in 1D, radii
// for planar laws, where pdf is the planar density at that radius) plus the
// singular parts. ac_mass is the integral of the continuous part computed by
// adaptive quadrature; defect_mass is probability that is not located
// anywhere (odd-event planar motion only).
struct DensityGrid {
  std::vector<double> points;
  std::vector<double> pdf;
  std::vector<Atom> atoms;
  std::vector<Arc> singular_arcs;
  double ac_mass = 0.0;
  double ac_mass_error = 0.0;
  double defect_mass = 0.0;

  double total_mass() const;
};

// Position at time t of the motion V(0) int_0^t (-1)^{N(s)} ds, V(0) = +-c.
double draw_telegraph(const TelegraphSpec& spec, double t, Rng& rng);

SampleBatch sample_telegraph(const TelegraphSpec& spec, double t, std::size_t count,
                             std::uint64_t seed, Exec exec = Exec::parallel);

// Absolutely continuous density on |x| < ct; zero outside.
double telegraph_pdf(const TelegraphSpec& spec, double x, double t);

// pdf on `points` equally spaced nodes of [-ct, ct] and atoms of mass
// e^{-lam t}/2 at +-ct.
DensityGrid telegraph_density(const TelegraphSpec& spec, double t, std::size_t points = 401);

// E exp(i xi T(t)); real for every xi.
double telegraph_char(const TelegraphSpec& spec, double xi, double t);

// Same with c^2 xi^2 replaced by c^2 |xi|^{2 beta}.
double telegraph_frac_char(const TelegraphSpec& spec, double beta, double xi, double t);

// Planar motion with a uniform new direction at each Poisson epoch.
PlanarSample draw_planar(const TelegraphSpec& spec, double t, Rng& rng);

PlanarBatch sample_planar(const TelegraphSpec& spec, double t, std::size_t count,
                          std::uint64_t seed, Exec exec = Exec::parallel);

// Odd-event variant: with probability e^{-2 lam t} a defect (x = y = NaN);
// otherwise the motion conditioned on an odd number K of direction changes,
// P(K = 2k+1) proportional to (lam t)^{2k+1}/(2k+1)!.
PlanarBatch sample_planar_odd(const TelegraphSpec& spec, double t, std::size_t count,
                              std::uint64_t seed, Exec exec = Exec::parallel);

// Planar density r at radius rho < ct.
double planar_pdf(const TelegraphSpec& spec, double rho, double t);

// Density of the odd-event motion at radius rho < ct.
double planar_frak_pdf(const TelegraphSpec& spec, double rho, double t);

// Density at radius rho given exactly n direction changes by time t:
// n/(2 pi (ct)^n) (c^2 t^2 - rho^2)^{n/2 - 1}.
double planar_conditional_pdf(const TelegraphSpec& spec, double rho, double t, int n);

// sum_{n=1}^{terms} P(N(t) = n) * conditional density.
double planar_pdf_mixture(const TelegraphSpec& spec, double rho, double t, int terms = 60);

// 2 sum_k P(N(t) = 2k+1) * conditional density over odd n <= terms.
double planar_frak_pdf_mixture(const TelegraphSpec& spec, double rho, double t, int terms = 60);

// P(rho(t) <= rho) for the planar motion, boundary mass included at rho = ct.
double planar_radial_cdf(const TelegraphSpec& spec, double rho, double t);

// P(rho <= r | no defect) for the odd-event motion.
double planar_frak_radial_cdf(const TelegraphSpec& spec, double rho, double t);

// Radial tabulation on `points` nodes of [0, ct) with the boundary arc.
DensityGrid planar_density(const TelegraphSpec& spec, double t, std::size_t points = 401);

// Same for the odd-event motion; defect_mass = e^{-2 lam t}.
DensityGrid planar_density_frak(const TelegraphSpec& spec, double t, std::size_t points = 401);

}  // namespace fractel
