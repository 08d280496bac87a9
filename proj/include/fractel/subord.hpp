#pragma once

#include <cstdint>
#include <vector>

#include "fractel/parallel.hpp"
#include "fractel/sample.hpp"
#include "fractel/stable.hpp"

namespace fractel {

// Composite subordinator H(s) = H1^{2nu}(s) + (2 lam)^{1/nu} H2^{nu}(s) with
// independent one-sided stable components; at nu = 1/2 the first component
// is the unit drift s.
struct CompositeSpec {
  double nu = 0.5;
  double lambda = 1.0;
};

// Sampled trajectory: times[i] = i * ds, values non-decreasing.
struct PathGrid {
  std::vector<double> times;
  std::vector<double> values;
};

struct LaplacePair {
  double gamma_or_mu = 0.0;
  double value = 0.0;
};

enum class InverseMethod {
  automatic,   // exact inverse CDF at nu = 1/2, path otherwise
  path,        // grid path, crossing located by linear interpolation
  exact_half,  // closed-form inverse CDF, nu = 1/2 only
};

struct InverseOptions {
  InverseMethod method = InverseMethod::automatic;
  double ds = 0.0;  // 0 means t / 2048
  std::size_t max_steps = std::size_t{1} << 26;
};

void validate(const CompositeSpec& spec);

PathGrid composite_path(const CompositeSpec& spec, double s_max, double ds, std::uint64_t seed);

// One draw of the composite increment over a step of length ds.
double draw_composite_increment(const CompositeSpec& spec, double ds, Rng& rng);

// inf{s : H(s) >= t} from a path on step ds, linear interpolation in the
// crossing cell. Throws ResolutionError after max_steps steps.
double draw_inverse_path(const CompositeSpec& spec, double t, double ds, std::size_t max_steps,
                         Rng& rng);

// Exact draw at nu = 1/2 by inverting P(L(t) < x) = erf(lam x / sqrt(t - x)).
double draw_inverse_half_exact(double lambda, double t, Rng& rng);
double inverse_cdf_half(double lambda, double x, double t);

SampleBatch sample_inverse(const CompositeSpec& spec, double t, std::size_t count,
                           std::uint64_t seed, InverseOptions options = {},
                           Exec exec = Exec::parallel);

// Density of L(t) at x. nu = 1/2: closed form; nu = 1/3: Airy-type double
// integral. Other orders need DensityRoute::allow_slow and go through the
// general two-term convolution of stable and inverse-stable densities.
double inverse_density(const CompositeSpec& spec, double x, double t,
                       DensityRoute route = DensityRoute::fast_only);

// Same quantity always through the general two-term convolution (slow).
double inverse_density_convolution(const CompositeSpec& spec, double x, double t);

// int_0^inf e^{-gamma x} l(x, t) dx for gamma < lam^2, through
// Mittag-Leffler functions.
double inverse_density_laplace(const CompositeSpec& spec, double gamma, double t);

// Density of H(t) at x.
double composite_density(const CompositeSpec& spec, double x, double t,
                         DensityRoute route = DensityRoute::fast_only);

// int_0^inf e^{-mu t} l(x, t) dt.
double lcal_time_laplace(const CompositeSpec& spec, double x, double mu);

}  // namespace fractel
