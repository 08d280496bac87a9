#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fractel/compose.hpp"
#include "fractel/verify.hpp"

namespace fractel::suites {

// Named identity checks shared by the command-line runner and the
// acceptance driver. Every check reports (name, value, tolerance, pass).

// Two-sample KS between B(c^2 L^{1/2}(t)) and T(|B(t)|), count draws each.
std::vector<CheckResult> roletelegraph(const TelegraphSpec& spec, double t, std::size_t count,
                                       std::uint64_t seed, double alpha = 0.01);

// Order-1/3 inverse density: unit mass (1e-4) and x-Laplace transform
// against the Mittag-Leffler form (1e-3) at gamma = g * lam^2 for g in gammas.
std::vector<CheckResult> airy_onethird(double lambda, double t, std::span<const double> gammas);

// Planar laws: masses of r and rfrak, the Poisson mixtures with 60 terms,
// the mass of qfrak and its Fourier transform against w_char at two
// frequencies (0.5, 0.5) lam/c and (0.2, -0.6) lam/c.
std::vector<CheckResult> planar_frak(const TelegraphSpec& spec, double t);

// Residual of (Caputo^{2nu} + 2 lam Caputo^nu + c^2 |xi|^{2 beta}) applied to
// w_char on [0, t_max], taken over t >= t_max / 4, for intervals,
// 2 intervals, ...; each refinement must shrink it at least twofold.
std::vector<CheckResult> frac_ode(const ModelParams& params, std::span<const double> xi, double t_max,
                                  std::size_t intervals, int refinements = 3);

bool all_pass(const std::vector<CheckResult>& checks);

}  // namespace fractel::suites
