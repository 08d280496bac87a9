#pragma once

namespace fractel {

inline constexpr double default_tol = 1e-12;

struct EvalResult {
  double value = 0.0;
  double est_abs_error = 0.0;
};

// E_{nu,psi}(z) = sum_k z^k / Gamma(nu k + psi)
struct MLOrder {
  double nu = 1.0;
  double psi = 1.0;
};

// W_{a,b}(z) = sum_k z^k / (k! Gamma(a k + b))
struct WrightOrder {
  double a = 0.0;
  double b = 1.0;
};

// log|Gamma(x)| with its sign; thread-safe.
double log_abs_gamma(double x, int* sign);
// 1/Gamma(x), zero at the poles.
double rgamma(double x);

// Two-parameter Mittag-Leffler function on the real line.
// For z > 0 a positive-term series is used. For z < 0 the plain series is
// used only while its cancellation error stays under tol; otherwise
// 0 < nu < 1 switches to the Laplace-type integral representation (with the
// psi -> psi - nu recursion when psi >= 1 + nu). For |value| > 1 tol is
// relative.
EvalResult mittag_leffler(MLOrder order, double z, double tol = default_tol);

// E_{nu,1}(-lam t^nu) through its integral over the Lamperti-type kernel.
EvalResult mittag_leffler_integral(double nu, double lam, double t, double tol = default_tol);

EvalResult wright(WrightOrder order, double z, double tol = default_tol);

EvalResult airy_ai(double x);

// Modified Bessel functions of the first kind, orders 0 and 1.
EvalResult bessel_i0(double x);
EvalResult bessel_i1(double x);
// e^{-|x|} I_0(x) and e^{-|x|} I_1(x); finite for every real x.
double bessel_i0_scaled(double x);
double bessel_i1_scaled(double x);

// Density of the ratio of two independent one-sided nu-stable variables.
double lamperti_density(double nu, double u);

}  // namespace fractel
