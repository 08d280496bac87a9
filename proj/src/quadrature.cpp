#include "fractel/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

#include "fractel/errors.hpp"

namespace fractel::quad {

namespace bq = boost::math::quadrature;

namespace {

// One 61-point rule on [a, b]. The rule is applied on [-1, 1] and scaled
// here, because the library's own subdivision compares unscaled error
// estimates against scaled tolerances and never terminates on short intervals.
QuadResult gk_panel(const Integrand& f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  auto g = [&](double x) { return f(mid + half * x); };
  QuadResult r;
  r.value = half * bq::gauss_kronrod<double, 61>::integrate(g, -1.0, 1.0, 0, 0.0, &r.abs_error, &r.l1);
  r.abs_error *= std::fabs(half);
  r.l1 *= std::fabs(half);
  return r;
}

QuadResult gk_adapt(const Integrand& f, double a, double b, const QuadResult& panel, double abs_tol,
                    unsigned depth) {
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() * panel.l1;
  if (depth == 0 || panel.abs_error <= abs_tol || panel.abs_error <= floor) return panel;
  const double mid = 0.5 * (a + b);
  const QuadResult left = gk_adapt(f, a, mid, gk_panel(f, a, mid), 0.5 * abs_tol, depth - 1);
  const QuadResult right = gk_adapt(f, mid, b, gk_panel(f, mid, b), 0.5 * abs_tol, depth - 1);
  return {left.value + right.value, left.abs_error + right.abs_error, left.l1 + right.l1};
}

}  // namespace

QuadResult gauss_kronrod(const Integrand& f, double a, double b, double rel_tol,
                         unsigned max_depth) {
  if (a == b) return {};
  const QuadResult first = gk_panel(f, a, b);
  return gk_adapt(f, a, b, first, rel_tol * std::fabs(first.value), max_depth);
}

QuadResult tanh_sinh(const Integrand& f, double a, double b, double rel_tol) {
  // Abscissa tables are expensive to build; one per thread.
  thread_local bq::tanh_sinh<double> integrator(15);
  QuadResult r;
  if (a == b) return r;
  r.value = integrator.integrate(f, a, b, rel_tol, &r.abs_error, &r.l1);
  return r;
}

QuadResult half_line(const Integrand& f, double a, double rel_tol) {
  thread_local bq::exp_sinh<double> integrator(9);
  QuadResult r;
  r.value = integrator.integrate(f, a, std::numeric_limits<double>::infinity(), rel_tol,
                                 &r.abs_error, &r.l1);
  return r;
}

QuadResult gauss_kronrod_tail(const Integrand& f, double a, double span, double rel_tol) {
  QuadResult total;
  double lo = a;
  double w = span;
  for (int piece = 0; piece < 60; ++piece) {
    QuadResult r = gauss_kronrod(f, lo, lo + w, rel_tol);
    total.value += r.value;
    total.abs_error += r.abs_error;
    total.l1 += r.l1;
    if (piece > 0 && r.l1 <= 1e-3 * rel_tol * total.l1) return total;
    lo += w;
    w *= 2.0;
  }
  throw QuadratureError("tail integral did not decay", total.value, total.abs_error);
}

const QuadResult& require_accuracy(const QuadResult& r, double tol, const char* what) {
  if (!(r.abs_error <= tol) || !std::isfinite(r.value))
    throw QuadratureError(what, r.value, r.abs_error);
  return r;
}

}  // namespace fractel::quad
