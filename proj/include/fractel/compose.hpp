#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fractel/parallel.hpp"
#include "fractel/sample.hpp"
#include "fractel/subord.hpp"
#include "fractel/telegraph.hpp"

namespace fractel {

// Parameters of W_n(t) = S_n^{2 beta}(c^2 L^nu(t)).
struct ModelParams {
  double nu = 0.5;      // in (0, 1/2]
  double beta = 1.0;    // in (0, 1]
  double lambda = 1.0;  // > 0
  double c = 1.0;       // > 0
  int n = 1;            // >= 1
};

void validate(const ModelParams& params);

struct CharPoint {
  std::vector<double> xi;
  double t = 0.0;
  double value = 1.0;
};

// E exp(i xi . W_n(t)) for lam^2 > c^2 |xi|^{2 beta}; BranchError otherwise
// (except at xi = 0, where the value is exactly 1).
CharPoint w_char(const ModelParams& params, std::span<const double> xi, double t);

// Draws of W_n(t), row-major with dim = n. At nu = 1/2 the inverse process
// is drawn exactly, otherwise from a grid path with the given options.
SampleBatch sample_W(const ModelParams& params, double t, std::size_t count, std::uint64_t seed,
                     InverseOptions options = {}, Exec exec = Exec::parallel);

// Density e^{-s^2/(4t)}/sqrt(pi t) of |B(t)|, B with variance 2t.
double reflected_bm_density(double s, double t);

// Draws of T(|B(t)|).
SampleBatch sample_TB(const TelegraphSpec& spec, double t, std::size_t count, std::uint64_t seed,
                      Exec exec = Exec::parallel);

// int_0^inf telegraph_frac_char(beta, xi, s) p_{|B|}(s, t) ds: the characteristic
// function of T^{2 beta}(|B(t)|).
double tb_frac_char(const TelegraphSpec& spec, double beta, double xi, double t);

// Density of W_1(t) at nu = 1/2, beta = 1.
double w_density_1d_half(const TelegraphSpec& spec, double x, double t);

// Density of B_1(|B_2(t)|), the limit of the above as lam = c^2 -> inf.
double iterated_bm_density(double x, double t);

// int r(rho, s) p_{|B|}(s, t) ds with rho = |(x, y)|; infinite at the origin.
double planar_q_density(const TelegraphSpec& spec, double x, double y, double t);

// int rfrak(rho, s) [p_{|B|}(s, t) + (1/(2 lam)) s e^{-s^2/(4t)}/(2 sqrt(pi) t^{3/2})] ds,
// the second kernel being the half-order time derivative of p_{|B|}.
double planar_qfrak_density(const TelegraphSpec& spec, double x, double y, double t);

// int e^{-lam s} p_{|B|}(s, t) ds: probability that the planar motion made
// no turn before the random time |B(t)|.
double planar_q_boundary_mass(const TelegraphSpec& spec, double t);

// Draws of the planar motion at time |B(t)|; on_boundary marks draws with no
// direction change.
PlanarBatch sample_planar_TB(const TelegraphSpec& spec, double t, std::size_t count,
                             std::uint64_t seed, Exec exec = Exec::parallel);

}  // namespace fractel
