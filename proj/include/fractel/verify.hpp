#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fractel/sample.hpp"
#include "fractel/specfun.hpp"

namespace fractel {

struct GridFunction {
  std::vector<double> grid;
  std::vector<double> values;
};

GridFunction sample_uniform(const std::function<double(double)>& f, double a, double b,
                            std::size_t intervals);

struct KSReport {
  double statistic = 0.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;  // 0 for a one-sample test
  double alpha = 0.01;
  double critical = 0.0;
  bool pass = false;
};

struct CharEstimate {
  double value = 0.0;      // mean of cos(xi . X)
  double std_error = 0.0;  // Monte Carlo standard error of that mean
  double imag = 0.0;       // mean of sin(xi . X)
};

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Caputo derivative of order alpha on a uniform grid starting at t = 0.
// 0 < alpha < 1 uses the L1 scheme; alpha = 1 uses second-order backward
// differences (first step: one-sided). The result lives on grid[1..].
GridFunction caputo_derivative(const GridFunction& f, double order);

// Riemann-Liouville derivative by Grunwald-Letnikov weights, grid[1..].
GridFunction riemann_liouville_derivative(const GridFunction& f, double order);

// Max over nodes t >= t_from of
// |Caputo^{2 nu} E(r t^nu) - r^2 E(r t^nu) - r t^{-nu}/Gamma(1-nu)|, E = E_{nu,1}.
double caputo_double_eigen_check(double nu, double r, double t_max, std::size_t intervals,
                                 double t_from);

// Max over nodes t >= t_from of |Caputo^{2nu} f + 2 lam Caputo^nu f + coeff f|.
double frac_ode_residual(double nu, double lam, double coeff, const GridFunction& f,
                         double t_from);

// Fourier multiplier -|xi|^{2 beta} applied to f sampled on a uniform grid
// of a symmetric interval; f must have decayed at both ends.
GridFunction riesz_spectral(const GridFunction& f, double beta);

// -c(beta) int_0^inf (2u(x) - u(x+z) - u(x-z)) / z^{1+2beta} dz at each x,
// c(beta) = 2 beta / (2 Gamma(1 - 2 beta) cos(beta pi)), for 0 < 2 beta < 1.
GridFunction riesz_singular(const std::function<double(double)>& u, const std::vector<double>& x,
                            double beta);
double riesz_constant(double beta);

// int_0^inf e^{-mu t} f(t) dt, integrated up to t_max and with
// e^{-mu t_max} * sup_bound folded into the error.
EvalResult numerical_laplace(const std::function<double(double)>& f, double mu,
                             double sup_bound = 1.0, double tol = 1e-11);

CharEstimate empirical_char(const SampleBatch& batch, std::span<const double> xi);

// Smirnov asymptotic constant c(alpha) = sqrt(-ln(alpha/2)/2).
double ks_critical_constant(double alpha);
KSReport ks_two_sample(std::span<const double> a, std::span<const double> b, double alpha);
KSReport ks_two_sample(const SampleBatch& a, const SampleBatch& b, double alpha);
KSReport ks_one_sample(std::span<const double> a, const std::function<double(double)>& cdf,
                       double alpha);

// Pearson chi-square test of uniformity on [lo, hi); returns the p-value.
double chi_square_uniform_pvalue(std::span<const double> data, double lo, double hi,
                                 std::size_t bins);

// int_0^inf Ai(-y) dy by integrating between consecutive zeros and
// accelerating the alternating partial sums.
EvalResult airy_negative_half_line_integral();

}  // namespace fractel
