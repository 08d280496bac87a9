#pragma once

#include <functional>

namespace fractel::quad {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  double l1 = 0.0;  // integral of |f|, used to judge cancellation
};

using Integrand = std::function<double(double)>;

// Adaptive 61-point Gauss-Kronrod on a finite interval. Smooth integrands.
QuadResult gauss_kronrod(const Integrand& f, double a, double b, double rel_tol = 1e-11,
                         unsigned max_depth = 18);

// Double-exponential rule on a finite interval; tolerates integrable
// endpoint singularities. f is never evaluated at a or b.
QuadResult tanh_sinh(const Integrand& f, double a, double b, double rel_tol = 1e-11);

// Integral over [a, inf) with an exponential-sinh map.
QuadResult half_line(const Integrand& f, double a, double rel_tol = 1e-11);

// Integral over [a, inf) by Gauss-Kronrod on [a, a+span] with span doubled
// until the last piece is negligible. For integrands with a known decay
// scale but awkward interior structure.
QuadResult gauss_kronrod_tail(const Integrand& f, double a, double span, double rel_tol = 1e-11);

// Throws QuadratureError when abs_error exceeds tol (absolute).
const QuadResult& require_accuracy(const QuadResult& r, double tol, const char* what);

}  // namespace fractel::quad
