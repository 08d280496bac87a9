#include "fractel/stable.hpp"

#include <boost/math/special_functions/chebyshev_transform.hpp>
#include <cmath>
#include <numbers>

#include "fractel/errors.hpp"
#include "fractel/quadrature.hpp"
#include "fractel/specfun.hpp"

namespace fractel {

namespace {

constexpr double pi = std::numbers::pi;

bool near(double a, double b) { return std::fabs(a - b) < 1e-12; }

void check_order(double nu) {
  if (!(nu > 0.0 && nu < 1.0)) throw DomainError("stable order must lie in (0, 1)");
}

// Below this value of x / t^{3/2} the order-2/3 density is under
// C y^{-2} exp(-4/(27 y^2)) < 1e-24 and is returned as zero; the oscillatory
// kernel cannot resolve it anyway.
constexpr double two_thirds_left_cut = 0.045;

double h_half(double x, double t) {
  return t / (2.0 * std::sqrt(pi)) * std::exp(-t * t / (4.0 * x) - 1.5 * std::log(x));
}

double h_third(double x, double t) {
  const double c = std::cbrt(3.0 * x);
  const double arg = t / c;
  // Ai(arg) < 1e-290 beyond this point; avoids inf * 0 for tiny x.
  if (arg > 95.0) return 0.0;
  return t / (x * c) * airy_ai(arg).value;
}

double h_two_thirds(double x, double t) {
  if (x / std::pow(t, 1.5) < two_thirds_left_cut) return 0.0;
  const double g = std::cbrt(4.0 / (3.0 * x * x));
  const double v = t / std::sqrt(pi) / x * g * airy_kernel_two_thirds(t * g);
  return v > 0.0 ? v : 0.0;
}

// h_nu(y, 1) = (1/pi) sum_{k>=1} (-1)^{k+1} Gamma(nu k + 1)/k! sin(pi nu k) y^{-nu k - 1}
double h_series(double nu, double y) {
  double sum = 0.0, comp = 0.0, abs_sum = 0.0;
  const double ly = std::log(y);
  for (int k = 1; k < 5000; ++k) {
    const double lmag = std::lgamma(nu * k + 1.0) - std::lgamma(k + 1.0) - (nu * k + 1.0) * ly;
    double term = std::exp(lmag) * std::sin(pi * nu * k);
    if (!(k & 1)) term = -term;
    const double s = sum + term;
    comp += std::fabs(sum) >= std::fabs(term) ? (sum - s) + term : (term - s) + sum;
    sum = s;
    abs_sum += std::fabs(term);
    if (k > 5 && std::exp(lmag) < 1e-17 * std::fabs(sum + comp)) {
      const double v = (sum + comp) / pi;
      const double err = 8.0 * 2.2e-16 * abs_sum / pi;
      if (err > 1e-6 * std::fabs(v) + 1e-14)
        throw ConvergenceError("stable density series lost precision", v, err);
      return v;
    }
  }
  throw ConvergenceError("stable density series did not converge", (sum + comp) / pi, 0.0);
}

// Standard one-sided stable density from the Kanter representation
// P(X <= y) = (1/pi) int_0^pi exp(-A(u) y^{-nu/(1-nu)}) du; every term is
// positive, so it keeps relative accuracy deep in the left tail.
double stable_density_kanter(double nu, double y) {
  const double p = nu / (1.0 - nu);
  const double ly = std::log(y);
  const double scale = std::exp(-p * ly);
  auto log_a = [nu](double u) {
    return (nu * std::log(std::sin(nu * u)) + (1.0 - nu) * std::log(std::sin((1.0 - nu) * u)) -
            std::log(std::sin(u))) /
           (1.0 - nu);
  };
  // A is increasing, so its minimum A(0+) sets the overall exponential factor.
  const double la0 = p * std::log(nu) + std::log(1.0 - nu);
  const double a0 = std::exp(la0);
  auto f = [&](double u) {
    if (u <= 0.0) return std::exp(la0);
    if (u >= pi) return 0.0;
    const double la = log_a(u);
    return std::exp(la - scale * (std::exp(la) - a0));
  };
  const double v = quad::gauss_kronrod(f, 0.0, pi, 1e-13).value;
  return p / pi * std::exp(-(p + 1.0) * ly - scale * a0) * v;
}

}  // namespace

// w = u^6 turns the kernel into 6 u^4 e^{-u^6} Ai(-a u^2); the dropped tail
// beyond w = 40 is below 0.54 e^{-40}.
double airy_kernel_two_thirds_direct(double a) {
  static const double u_max = std::pow(40.0, 1.0 / 6.0);
  auto f = [a](double u) {
    const double u2 = u * u;
    return 6.0 * u2 * u2 * std::exp(-u2 * u2 * u2) * airy_ai(-a * u2).value;
  };
  return quad::gauss_kronrod(f, 0.0, u_max, 1e-12).value;
}

double airy_kernel_two_thirds(double a) {
  constexpr double a_max = 9.0;
  if (a < 0.0) return airy_kernel_two_thirds_direct(a);
  // Past this point the kernel is below 1e-6 and the cached polynomial only
  // carries absolute accuracy, so use K(a) = sqrt(pi) h_{2/3}(1, t) / a with
  // t = a (3/4)^{1/3}.
  if (a > 5.0) {
    const double t = a * std::cbrt(0.75);
    const double scale = std::pow(t, -1.5);
    return std::sqrt(pi) * scale * stable_density_kanter(2.0 / 3.0, scale) / a;
  }
  static const boost::math::chebyshev_transform<double> cheb(
      [](double v) { return airy_kernel_two_thirds_direct(v); }, 0.0, a_max, 1e-14);
  return cheb(a);
}

bool has_fast_density(double nu) {
  return near(nu, 0.5) || near(nu, 1.0 / 3.0) || near(nu, 2.0 / 3.0);
}

double draw_one_sided_stable(double nu, Rng& rng) {
  if (nu == 1.0) return 1.0;
  // Kanter: X = (A(U)/E)^{(1-nu)/nu},
  // A(u) = [sin(nu u)^nu sin((1-nu) u)^{1-nu} / sin u]^{1/(1-nu)}
  const double u = pi * rng.uniform();
  const double e = rng.exponential();
  const double log_a = (nu * std::log(std::sin(nu * u)) + (1.0 - nu) * std::log(std::sin((1.0 - nu) * u)) -
                        std::log(std::sin(u))) /
                       (1.0 - nu);
  return std::exp((1.0 - nu) / nu * (log_a - std::log(e)));
}

void draw_isotropic_stable(double beta, int n, double t, Rng& rng, double* out) {
  const double clock = beta == 1.0 ? t : std::pow(t, 1.0 / beta) * draw_one_sided_stable(beta, rng);
  const double sd = std::sqrt(2.0 * clock);
  for (int j = 0; j < n; ++j) out[j] = sd * rng.normal();
}

SampleBatch sample_subordinator(const SubordinatorSpec& spec, std::size_t count, std::uint64_t seed,
                                Exec exec) {
  check_order(spec.nu);
  if (!(spec.t > 0.0)) throw DomainError("sample_subordinator: t must be positive");
  if (count == 0) throw DomainError("sample_subordinator: count must be positive");
  SampleBatch out{spec.t, 1, seed, std::vector<double>(count)};
  const double scale = std::pow(spec.t, 1.0 / spec.nu);
  for_each_block(count, seed, exec, [&](Rng& rng, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out.values[i] = scale * draw_one_sided_stable(spec.nu, rng);
  });
  return out;
}

SampleBatch sample_isotropic_stable(const IsotropicStableSpec& spec, std::size_t count,
                                    std::uint64_t seed, Exec exec) {
  if (!(spec.beta > 0.0 && spec.beta <= 1.0)) throw DomainError("isotropic stable: beta in (0, 1]");
  if (spec.n < 1) throw DomainError("isotropic stable: n >= 1");
  if (!(spec.t > 0.0)) throw DomainError("isotropic stable: t must be positive");
  if (count == 0) throw DomainError("isotropic stable: count must be positive");
  const std::size_t dim = static_cast<std::size_t>(spec.n);
  SampleBatch out{spec.t, dim, seed, std::vector<double>(count * dim)};
  for_each_block(count, seed, exec, [&](Rng& rng, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      draw_isotropic_stable(spec.beta, spec.n, spec.t, rng, out.values.data() + i * dim);
  });
  return out;
}

double stable_char(const IsotropicStableSpec& spec, std::span<const double> xi) {
  if (xi.size() != static_cast<std::size_t>(spec.n)) throw DomainError("stable_char: dim(xi) != n");
  double norm2 = 0.0;
  for (double v : xi) norm2 += v * v;
  return std::exp(-spec.t * std::pow(norm2, spec.beta));
}

double subordinator_density(double nu, double x, double t, DensityRoute route) {
  check_order(nu);
  if (!(t > 0.0)) throw DomainError("subordinator_density: t must be positive");
  if (!(x > 0.0)) return 0.0;
  if (near(nu, 0.5)) return h_half(x, t);
  if (near(nu, 1.0 / 3.0)) return h_third(x, t);
  if (near(nu, 2.0 / 3.0)) return h_two_thirds(x, t);
  if (route != DensityRoute::allow_slow)
    throw UnsupportedOrderError("subordinator_density: no fast path for this order");
  const double scale = std::pow(t, 1.0 / nu);
  const double y = x / scale;
  // The series cancels badly in the left tail, where the positive integral is exact.
  return (y < 1.0 ? stable_density_kanter(nu, y) : h_series(nu, y)) / scale;
}

double inverse_stable_density(double nu, double x, double t, DensityRoute route) {
  check_order(nu);
  if (!(t > 0.0)) throw DomainError("inverse_stable_density: t must be positive");
  if (x < 0.0) return 0.0;
  if (near(nu, 0.5)) return std::exp(-x * x / (4.0 * t)) / std::sqrt(pi * t);
  if (near(nu, 1.0 / 3.0)) {
    const double c = std::cbrt(3.0 * t);
    return 3.0 / c * airy_ai(x / c).value;
  }
  if (near(nu, 2.0 / 3.0)) {
    // l(x, t) = t/(nu x) h(t, x); same left cut in the scaled variable.
    if (x == 0.0 || t / std::pow(x, 1.5) < two_thirds_left_cut) {
      if (x == 0.0) return 1.0 / (std::pow(t, nu) * std::tgamma(1.0 - nu));
      return 0.0;
    }
    const double g = std::cbrt(4.0 / (3.0 * t * t));
    const double v = 3.0 / (2.0 * std::sqrt(pi)) * g * airy_kernel_two_thirds(x * g);
    return v > 0.0 ? v : 0.0;
  }
  if (route != DensityRoute::allow_slow)
    throw UnsupportedOrderError("inverse_stable_density: no fast path for this order");
  const double tn = std::pow(t, nu);
  // Large Wright arguments are the stable left tail: l(x, t) = t/(nu x) h(t, x).
  if (x / tn > 1.0) return t / (nu * x) * subordinator_density(nu, t, x, route);
  return wright({-nu, 1.0 - nu}, -x / tn).value / tn;
}

}  // namespace fractel
