#include "fractel/subord.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>

#include "fractel/errors.hpp"
#include "fractel/quadrature.hpp"
#include "fractel/specfun.hpp"

namespace fractel {

namespace {

constexpr double pi = std::numbers::pi;

bool is_half(double nu) { return std::fabs(nu - 0.5) < 1e-12; }
bool is_third(double nu) { return std::fabs(nu - 1.0 / 3.0) < 1e-12; }

double inverse_density_half(double lam, double x, double t) {
  if (!(x >= 0.0) || !(x < t)) return 0.0;
  const double r = t - x;
  const double g = lam * lam * x * x / r;
  return 2.0 * lam / std::sqrt(pi) * std::exp(-g) * (1.0 / std::sqrt(r) + x / (2.0 * r * std::sqrt(r)));
}

// Both convolution terms share one Airy kernel evaluation:
// (2 lam/sqrt(pi)) int_0^t 3 (3s)^{-1/3} Ai(2 lam x (3s)^{-1/3}) g K(x g) [x/(2s) + x/(t-s)] ds,
// g = (4/(3 (t-s)^2))^{1/3}.
double inverse_density_third(double lam, double x, double t) {
  if (!(x >= 0.0)) return 0.0;
  // Below this the peak at s ~ (2 lam x)^3 underflows and the density equals its
  // value at x = 0+ to within about x.
  if (x < 1e-12) return std::pow(t, -2.0 / 3.0) * rgamma(1.0 / 3.0) + 2.0 * lam * std::pow(t, -1.0 / 3.0) * rgamma(2.0 / 3.0);
  const double log_x = std::log(x);
  // Past the order-2/3 left cut, t - s < 0.045 x^{3/2}, the kernel term is negligible.
  const double log_cut = std::log(0.045) + 1.5 * log_x;
  auto integrand = [&](double s, double ts) {
    if (s <= 0.0 || ts <= 0.0 || std::log(ts) < log_cut) return 0.0;
    const double c = std::cbrt(3.0 * s);
    const double arg = 2.0 * lam * x / c;
    if (arg > 95.0) return 0.0;
    const double log_g = (std::log(4.0 / 3.0) - 2.0 * std::log(ts)) / 3.0;
    const double k = airy_kernel_two_thirds(std::exp(log_x + log_g));
    return 3.0 / c * airy_ai(arg).value * k * (std::exp(log_g + log_x - std::log(2.0 * s)) + std::exp(log_g + log_x - std::log(ts)));
  };
  // The stable factor peaks near s = 0 on a scale (2 lam x)^3 and the kernel
  // factor near s = t on a scale x^{3/2}, each with a power-law tail, so the
  // outer quarters are integrated in log(s) and log(t - s).
  const double quarter = 0.25 * t;
  const double log_q = std::log(quarter);
  const double log_lo = 3.0 * std::log(2.0 * lam * x / 95.0) - std::log(3.0);
  const double mid_end = t - std::max(quarter, std::exp(log_cut));
  double v = 0.0;
  if (mid_end > quarter)
    v = quad::gauss_kronrod([&](double s) { return integrand(s, t - s); }, quarter, mid_end, 1e-10, 12).value;
  if (log_lo < log_q) {
    auto head = [&](double u) {
      const double s = std::exp(u);
      return integrand(s, t - s) * s;
    };
    v += quad::gauss_kronrod(head, std::max(log_lo, -700.0), log_q, 1e-10, 12).value;
  }
  if (log_cut < log_q) {
    auto tail = [&](double u) {
      const double ts = std::exp(u);
      return integrand(t - ts, ts) * ts;
    };
    v += quad::gauss_kronrod(tail, std::max(log_cut, -700.0), log_q, 1e-10, 12).value;
  }
  return std::max(0.0, 2.0 * lam / std::sqrt(pi) * v);
}

}  // namespace

void validate(const CompositeSpec& spec) {
  if (!(spec.nu > 0.0 && spec.nu <= 0.5)) throw DomainError("composite subordinator: nu in (0, 1/2]");
  if (!(spec.lambda > 0.0)) throw DomainError("composite subordinator: lambda > 0");
}

double draw_composite_increment(const CompositeSpec& spec, double ds, Rng& rng) {
  const double nu = spec.nu;
  const double first = is_half(nu) ? ds : std::pow(ds, 1.0 / (2.0 * nu)) * draw_one_sided_stable(2.0 * nu, rng);
  const double second = std::pow(2.0 * spec.lambda * ds, 1.0 / nu) * draw_one_sided_stable(nu, rng);
  return first + second;
}

PathGrid composite_path(const CompositeSpec& spec, double s_max, double ds, std::uint64_t seed) {
  validate(spec);
  if (!(ds > 0.0) || !(s_max >= ds)) throw DomainError("composite_path: need ds > 0 and s_max >= ds");
  const auto steps = static_cast<std::size_t>(std::floor(s_max / ds + 1e-9));
  PathGrid p;
  p.times.resize(steps + 1);
  p.values.resize(steps + 1);
  Rng rng(seed, 0);
  double level = 0.0;
  for (std::size_t i = 0; i <= steps; ++i) {
    if (i > 0) level += draw_composite_increment(spec, ds, rng);
    p.times[i] = ds * static_cast<double>(i);
    p.values[i] = level;
  }
  return p;
}

double draw_inverse_path(const CompositeSpec& spec, double t, double ds, std::size_t max_steps,
                         Rng& rng) {
  double level = 0.0;
  for (std::size_t k = 1; k <= max_steps; ++k) {
    const double next = level + draw_composite_increment(spec, ds, rng);
    if (next >= t) {
      const double frac = (t - level) / (next - level);
      return ds * (static_cast<double>(k - 1) + frac);
    }
    level = next;
  }
  throw ResolutionError("inverse sampler: path did not reach t", level, max_steps);
}

double inverse_cdf_half(double lambda, double x, double t) {
  if (x <= 0.0) return 0.0;
  if (x >= t) return 1.0;
  return std::erf(lambda * x / std::sqrt(t - x));
}

double draw_inverse_half_exact(double lambda, double t, Rng& rng) {
  const double q = boost::math::erf_inv(rng.uniform());
  const double q2 = q * q;
  // root of lam^2 x^2 + q^2 x - q^2 t = 0, written without cancellation
  return 2.0 * q2 * t / (q2 + std::sqrt(q2 * q2 + 4.0 * lambda * lambda * q2 * t));
}

SampleBatch sample_inverse(const CompositeSpec& spec, double t, std::size_t count,
                           std::uint64_t seed, InverseOptions options, Exec exec) {
  validate(spec);
  if (!(t > 0.0)) throw DomainError("sample_inverse: t must be positive");
  if (count == 0) throw DomainError("sample_inverse: count must be positive");
  InverseMethod method = options.method;
  if (method == InverseMethod::automatic) method = is_half(spec.nu) ? InverseMethod::exact_half : InverseMethod::path;
  if (method == InverseMethod::exact_half && !is_half(spec.nu))
    throw DomainError("sample_inverse: exact sampler exists only for nu = 1/2");
  const double ds = options.ds > 0.0 ? options.ds : t / 2048.0;

  SampleBatch out{t, 1, seed, std::vector<double>(count)};
  for_each_block(count, seed, exec, [&](Rng& rng, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      out.values[i] = method == InverseMethod::exact_half
                          ? draw_inverse_half_exact(spec.lambda, t, rng)
                          : draw_inverse_path(spec, t, ds, options.max_steps, rng);
  });
  return out;
}

double inverse_density(const CompositeSpec& spec, double x, double t, DensityRoute route) {
  validate(spec);
  if (!(t > 0.0)) throw DomainError("inverse_density: t must be positive");
  if (is_half(spec.nu)) return inverse_density_half(spec.lambda, x, t);
  if (is_third(spec.nu)) return inverse_density_third(spec.lambda, x, t);
  if (route != DensityRoute::allow_slow)
    throw UnsupportedOrderError("inverse_density: no fast path for this order");
  return inverse_density_convolution(spec, x, t);
}

double inverse_density_convolution(const CompositeSpec& spec, double x, double t) {
  validate(spec);
  if (is_half(spec.nu)) throw UnsupportedOrderError("inverse_density_convolution: order-1 component is a drift");
  if (!(x > 0.0)) return 0.0;
  const double nu = spec.nu, lam = spec.lambda;
  const auto slow = DensityRoute::allow_slow;
  // int_0^t [l_{2nu}(x, t-s) h_nu(s, 2 lam x) + 2 lam h_{2nu}(t-s, x) l_nu(2 lam x, s)] ds
  auto f = [&](double s) {
    const double ts = t - s;
    if (s <= 0.0 || ts <= 0.0) return 0.0;
    return inverse_stable_density(2.0 * nu, x, ts, slow) * subordinator_density(nu, s, 2.0 * lam * x, slow) +
           2.0 * lam * subordinator_density(2.0 * nu, ts, x, slow) * inverse_stable_density(nu, 2.0 * lam * x, s, slow);
  };
  auto outer = [&](double theta) {
    const double sn = std::sin(theta), cs = std::cos(theta);
    return f(t * sn * sn) * 2.0 * t * sn * cs;
  };
  return std::max(0.0, quad::gauss_kronrod(outer, 0.0, pi / 2.0, 1e-9, 12).value);
}

double inverse_density_laplace(const CompositeSpec& spec, double gamma, double t) {
  validate(spec);
  if (!(t >= 0.0)) throw DomainError("inverse_density_laplace: t must be non-negative");
  const double lam = spec.lambda;
  if (!(gamma < lam * lam)) throw BranchError("inverse_density_laplace: needs gamma < lambda^2");
  if (t == 0.0) return 1.0;
  const double root = std::sqrt(lam * lam - gamma);
  const double r1 = -lam + root, r2 = -lam - root;
  const double tn = std::pow(t, spec.nu);
  const MLOrder order{spec.nu, 1.0};
  const double w1 = 1.0 + lam / root, w2 = 1.0 - lam / root;
  const double e1 = mittag_leffler(order, r1 * tn).value;
  const double e2 = w2 == 0.0 ? 0.0 : mittag_leffler(order, r2 * tn).value;
  return 0.5 * (w1 * e1 + w2 * e2);
}

double composite_density(const CompositeSpec& spec, double x, double t, DensityRoute route) {
  validate(spec);
  if (!(t > 0.0)) throw DomainError("composite_density: t must be positive");
  const double nu = spec.nu, lam = spec.lambda;
  if (is_half(nu)) {
    if (!(x > t)) return 0.0;
    const double w = 4.0 * lam * lam;
    return subordinator_density(0.5, (x - t) / w, t) / w;
  }
  if (!(x > 0.0)) return 0.0;
  if (!is_third(nu) && route != DensityRoute::allow_slow)
    throw UnsupportedOrderError("composite_density: no fast path for this order");
  const double u = 2.0 * lam * t;
  auto f = [&](double y, double z) {
    if (y <= 0.0 || z <= 0.0) return 0.0;
    return subordinator_density(2.0 * nu, y, t, route) * subordinator_density(nu, z, u, route);
  };
  // Both factors vanish faster than any power at the origin and peak close to
  // it, so each half is integrated in the log of the distance to its end.
  double y_lo = 1e-30 * x, z_lo = 1e-30 * x;
  if (is_third(nu)) {
    y_lo = std::max(y_lo, 0.045 * std::pow(t, 1.5));
    z_lo = std::max(z_lo, u * u * u / (3.0 * 95.0 * 95.0 * 95.0));
  }
  const double half = 0.5 * x;
  double v = 0.0;
  if (y_lo < half)
    v += quad::gauss_kronrod([&](double w) {
           const double y = std::exp(w);
           return f(y, x - y) * y;
         }, std::log(y_lo), std::log(half), 1e-10, 12).value;
  if (z_lo < half)
    v += quad::gauss_kronrod([&](double w) {
           const double z = std::exp(w);
           return f(x - z, z) * z;
         }, std::log(z_lo), std::log(half), 1e-10, 12).value;
  return std::max(0.0, v);
}

double lcal_time_laplace(const CompositeSpec& spec, double x, double mu) {
  validate(spec);
  if (!(mu > 0.0)) throw DomainError("lcal_time_laplace: mu must be positive");
  if (x < 0.0) return 0.0;
  const double nu = spec.nu, lam = spec.lambda;
  const double m2 = std::pow(mu, 2.0 * nu), m1 = std::pow(mu, nu);
  return (m2 / mu + 2.0 * lam * m1 / mu) * std::exp(-x * m2 - 2.0 * lam * x * m1);
}

}  // namespace fractel
