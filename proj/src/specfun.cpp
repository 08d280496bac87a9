#include "fractel/specfun.hpp"

#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "fractel/errors.hpp"
#include "fractel/quadrature.hpp"

namespace fractel {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double pi = std::numbers::pi;
constexpr int series_budget = 20000;

// Neumaier compensated sum.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  double abs_sum = 0.0;
  void add(double x) {
    double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
    abs_sum += std::fabs(x);
  }
  double value() const { return sum + comp; }
};

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// log of the largest |term| of sum |z|^k / Gamma(nu k + psi).
double ml_peak_log_term(double nu, double psi, double az) {
  if (az == 0.0) return -std::lgamma(psi);
  const double lz = std::log(az);
  double best = -std::numeric_limits<double>::infinity();
  // Terms are log-concave in k past the Gamma minimum, so stop once they fall
  // well below the running maximum.
  for (int k = 0; k < 100 * series_budget; ++k) {
    int sg;
    double lt = k * lz - log_abs_gamma(nu * k + psi, &sg);
    if (lt > best) best = lt;
    if (k > 4 && lt < best - 50.0 && nu * k + psi > 2.0) break;
  }
  return best;
}

EvalResult ml_series(double nu, double psi, double z, double tol, bool throw_on_loss) {
  const double az = std::fabs(z);
  const double lz = std::log(az);
  CompensatedSum acc;
  double prev_lt = std::numeric_limits<double>::infinity();
  for (int k = 0; k < series_budget; ++k) {
    int sg;
    const double lt = k * lz - log_abs_gamma(nu * k + psi, &sg);
    const double mag = std::exp(lt);
    const double term = ((z < 0.0 && (k & 1)) ? -mag : mag) * sg;
    acc.add(term);
    const double v = acc.value();
    const bool decreasing = lt < prev_lt;
    prev_lt = lt;
    if (decreasing && nu * k + psi > 1.5) {
      int sg1, sg2;
      const double next = std::exp((k + 1) * lz - log_abs_gamma(nu * (k + 1) + psi, &sg1));
      const double next2 = std::exp((k + 2) * lz - log_abs_gamma(nu * (k + 2) + psi, &sg2));
      const double ratio = next2 / next;
      if (ratio < 1.0) {
        // Alternating tail: bounded by the first omitted term. Positive
        // tail with decreasing ratios: geometric bound.
        const double tail = z < 0.0 ? next : next / (1.0 - ratio);
        const double rounding = 8.0 * eps * acc.abs_sum;
        const double scale = std::max(1.0, std::fabs(v));
        if (tail <= 0.01 * tol * scale || tail <= eps * std::fabs(v)) {
          EvalResult r{v, tail + rounding};
          if (throw_on_loss && r.est_abs_error > tol * scale)
            throw ConvergenceError("Mittag-Leffler series lost precision to cancellation", v,
                                   r.est_abs_error);
          return r;
        }
      }
    }
    if (!std::isfinite(v)) throw RangeError("Mittag-Leffler series overflowed");
  }
  throw ConvergenceError("Mittag-Leffler series did not converge", acc.value(), 0.0);
}

// E_{nu,psi}(-x), x > 0, 0 < nu < 1, 0 < psi < 1 + nu, via
// (1/(pi x)) int_0^inf e^{-u} u^{nu-psi} N(u/s) / D(u/s) du with s = x^{1/nu}.
EvalResult ml_negative_integral(double nu, double psi, double x, double tol) {
  const double s = std::pow(x, 1.0 / nu);
  const double sp = std::sin(pi * psi);
  const double spn = std::sin(pi * (psi - nu));
  const double cn = std::cos(pi * nu);
  auto f = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double r = u / s;
    const double rn = std::pow(r, nu);
    const double num = rn * sp + spn;
    const double den = rn * rn + 2.0 * rn * cn + 1.0;
    return std::exp(-u) * std::pow(u, nu - psi) * num / den;
  };
  const double rel = std::max(0.1 * tol, 1e-15);
  quad::QuadResult a, b;
  if (s < 50.0) {
    // The kernel peaks near r = 1 when nu is close to 1.
    a = quad::tanh_sinh(f, 0.0, s, rel);
    b = quad::half_line(f, s, rel);
  } else {
    a = quad::tanh_sinh(f, 0.0, 1.0, rel);
    b = quad::half_line(f, 1.0, rel);
  }
  const double scale = 1.0 / (pi * x);
  const double v = scale * (a.value + b.value);
  const double err = scale * (a.abs_error + b.abs_error) + 16.0 * eps * scale * (a.l1 + b.l1);
  return {v, err};
}

double bessel_asymptotic_sum(double order, double x) {
  // sum_k (-1)^k a_k(order) / x^k with a_k = prod_{j<=k}(4 order^2 - (2j-1)^2) / (k! 8^k)
  const double mu = 4.0 * order * order;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = -term * (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * x);
    if (std::fabs(next) >= std::fabs(term)) break;
    term = next;
    sum += term;
    if (std::fabs(term) < eps * std::fabs(sum)) break;
  }
  return sum;
}

constexpr double bessel_series_limit = 30.0;

// e^{-|x|} I_order(|x|) by the power series, order in {0, 1}.
double bessel_series_scaled(int order, double ax) {
  const double h = 0.5 * ax;
  const double h2 = h * h;
  double term = order == 0 ? 1.0 : h;
  CompensatedSum acc;
  acc.add(term);
  for (int k = 1; k < 500; ++k) {
    term *= h2 / (static_cast<double>(k) * (k + order));
    acc.add(term);
    if (term < eps * 0.01 * acc.value()) break;
  }
  return acc.value() * std::exp(-ax);
}

double bessel_scaled(int order, double x) {
  const double ax = std::fabs(x);
  double v;
  if (ax <= bessel_series_limit)
    v = bessel_series_scaled(order, ax);
  else
    v = bessel_asymptotic_sum(order, ax) / std::sqrt(2.0 * pi * ax);
  return (order == 1 && x < 0.0) ? -v : v;
}

}  // namespace

double log_abs_gamma(double x, int* sign) {
  int sg = 1;
  double v = ::lgamma_r(x, &sg);
  if (sign) *sign = sg;
  return v;
}

double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  int sg;
  double l = log_abs_gamma(x, &sg);
  return sg * std::exp(-l);
}

EvalResult mittag_leffler(MLOrder order, double z, double tol) {
  const double nu = order.nu;
  const double psi = order.psi;
  if (!(nu > 0.0) || !(psi > 0.0)) throw DomainError("mittag_leffler: need nu > 0 and psi > 0");
  if (!std::isfinite(z)) throw DomainError("mittag_leffler: z must be finite");
  if (!(tol > 0.0)) throw DomainError("mittag_leffler: tol must be positive");

  if (z == 0.0) return {rgamma(psi), 0.0};
  if (psi == 1.0 && nu == 1.0) {
    double v = std::exp(z);
    return {v, 2.0 * eps * v};
  }
  if (psi == 1.0 && nu == 2.0) {
    double v = z > 0.0 ? std::cosh(std::sqrt(z)) : std::cos(std::sqrt(-z));
    return {v, 4.0 * eps * std::max(1.0, std::fabs(v))};
  }
  if (z > 0.0) {
    if (std::pow(z, 1.0 / nu) > 700.0) throw RangeError("mittag_leffler: value overflows double");
    return ml_series(nu, psi, z, tol, false);
  }

  // z < 0: series only while max |term| * eps stays below tol.
  const bool integral_route = nu < 1.0;
  const double peak = ml_peak_log_term(nu, psi, -z);
  if (!integral_route || 8.0 * eps * std::exp(peak) <= tol) {
    try {
      return ml_series(nu, psi, z, tol, true);
    } catch (const ConvergenceError&) {
      if (!integral_route) throw;
    }
  }

  if (psi < 1.0 + nu) return ml_negative_integral(nu, psi, -z, tol);
  // E_{nu,psi}(z) = (E_{nu,psi-nu}(z) - 1/Gamma(psi-nu)) / z
  EvalResult lower = mittag_leffler({nu, psi - nu}, z, tol * std::fabs(z));
  return {(lower.value - rgamma(psi - nu)) / z, lower.est_abs_error / std::fabs(z)};
}

EvalResult mittag_leffler_integral(double nu, double lam, double t, double tol) {
  if (!(nu > 0.0 && nu < 1.0)) throw DomainError("mittag_leffler_integral: need 0 < nu < 1");
  if (!(lam > 0.0) || !(t >= 0.0)) throw DomainError("mittag_leffler_integral: need lam > 0, t >= 0");
  if (t == 0.0) return {1.0, 0.0};
  // r = lam^{1/nu} rho:
  // (1/pi) int_0^inf e^{-rho s} sin(nu pi) rho^{nu-1} / (rho^{2nu} + 2 rho^nu cos(nu pi) + 1)
  const double s = std::pow(lam, 1.0 / nu) * t;
  const double sn = std::sin(nu * pi);
  const double cn = std::cos(nu * pi);
  auto f = [&](double rho) {
    if (rho <= 0.0) return 0.0;
    const double rn = std::pow(rho, nu);
    return std::exp(-rho * s) * sn * rn / rho / (rn * rn + 2.0 * rn * cn + 1.0);
  };
  const double rel = std::max(0.1 * tol, 1e-15);
  const double split = s > 1.0 ? 1.0 / s : 1.0;
  quad::QuadResult a = quad::tanh_sinh(f, 0.0, split, rel);
  quad::QuadResult b = quad::half_line(f, split, rel);
  const double v = (a.value + b.value) / pi;
  const double err = (a.abs_error + b.abs_error + 16.0 * eps * (a.l1 + b.l1)) / pi;
  if (!std::isfinite(v)) throw QuadratureError("mittag_leffler_integral failed", v, err);
  return {v, err};
}

EvalResult wright(WrightOrder order, double z, double tol) {
  const double a = order.a;
  const double b = order.b;
  if (!(a > -1.0)) throw DomainError("wright: need a > -1");
  if (!std::isfinite(z) || !std::isfinite(b)) throw DomainError("wright: arguments must be finite");
  if (z == 0.0) return {rgamma(b), 0.0};

  const double lz = std::log(std::fabs(z));
  CompensatedSum acc;
  double prev_env = std::numeric_limits<double>::infinity();
  int falling = 0;
  for (int k = 0; k < series_budget; ++k) {
    const double x = a * k + b;
    // |1/Gamma(x)| <= Gamma(1-x)/pi for x < 1, which gives a pole-free
    // envelope even when x sits a rounding error away from a pole.
    int sg;
    double lenv = k * lz - std::lgamma(k + 1.0);
    if (x >= 1.0)
      lenv -= log_abs_gamma(x, &sg);
    else
      lenv += log_abs_gamma(1.0 - x, &sg) - std::log(pi);
    const double env = std::exp(lenv);
    const double sign_z = (z < 0.0 && (k & 1)) ? -1.0 : 1.0;
    const double term = sign_z * std::exp(k * lz - std::lgamma(k + 1.0)) * rgamma(x);
    acc.add(term);
    const double ratio = env / prev_env;
    falling = ratio < 1.0 ? falling + 1 : 0;
    prev_env = env;
    if (falling >= 3 && ratio < 0.5) {
      // Envelope ratios keep shrinking from here, so the tail is at most a
      // geometric series started at the next term.
      const double v = acc.value();
      const double tail = 2.0 * env * ratio;
      if (tail <= 0.01 * tol * std::max(1.0, std::fabs(v))) {
        const double err = tail + 8.0 * eps * acc.abs_sum;
        // Digits lost to cancellation are reported, not fatal, unless
        // nothing meaningful is left.
        if (err > 1e-3 * std::max(1.0, std::fabs(v)))
          throw ConvergenceError("Wright series lost precision to cancellation", v, err);
        return {v, err};
      }
    }
    if (!std::isfinite(acc.value())) throw RangeError("Wright series overflowed");
  }
  throw ConvergenceError("Wright series did not converge", acc.value(), 0.0);
}

EvalResult airy_ai(double x) {
  if (!std::isfinite(x)) throw DomainError("airy_ai: x must be finite");
  const double v = boost::math::airy_ai(x);
  // Below zero the function oscillates under the envelope |x|^{-1/4}/sqrt(pi).
  const double scale =
      x < 0.0 ? std::pow(-x, -0.25) / std::sqrt(pi) * (1.0 - x) : std::fabs(v) * (1.0 + x);
  return {v, 64.0 * eps * scale};
}

EvalResult bessel_i0(double x) {
  if (!std::isfinite(x)) throw DomainError("bessel_i0: x must be finite");
  if (std::fabs(x) > 705.0) throw RangeError("bessel_i0: result overflows double");
  const double v = bessel_scaled(0, x) * std::exp(std::fabs(x));
  return {v, 16.0 * eps * v};
}

EvalResult bessel_i1(double x) {
  if (!std::isfinite(x)) throw DomainError("bessel_i1: x must be finite");
  if (std::fabs(x) > 705.0) throw RangeError("bessel_i1: result overflows double");
  const double v = bessel_scaled(1, x) * std::exp(std::fabs(x));
  return {v, 16.0 * eps * std::fabs(v)};
}

double bessel_i0_scaled(double x) { return bessel_scaled(0, x); }
double bessel_i1_scaled(double x) { return bessel_scaled(1, x); }

double lamperti_density(double nu, double u) {
  if (!(nu > 0.0 && nu < 1.0)) throw DomainError("lamperti_density: need 0 < nu < 1");
  if (!(u > 0.0)) throw DomainError("lamperti_density: need u > 0");
  const double un = std::pow(u, nu);
  return std::sin(pi * nu) / pi * un / u / (1.0 + un * un + 2.0 * un * std::cos(pi * nu));
}

}  // namespace fractel
