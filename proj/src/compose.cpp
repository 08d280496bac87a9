#include "fractel/compose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fractel/errors.hpp"
#include "fractel/quadrature.hpp"
#include "fractel/stable.hpp"

namespace fractel {

namespace {

constexpr double pi = std::numbers::pi;

bool is_half(double nu) { return std::fabs(nu - 0.5) < 1e-12; }

void check_time(double t, const char* what) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError(what);
}

// s beyond which e^{-s^2/(4t)} is below e^{-81}
double reflected_cutoff(double t) { return 18.0 * std::sqrt(t); }

// Half-order time derivative of p_{|B|}(s, t).
double half_derivative_kernel(double s, double t) {
  return s * std::exp(-s * s / (4.0 * t)) / (2.0 * std::sqrt(pi) * std::pow(t, 1.5));
}

// int_{rho/c}^inf F(s) w(s) ds for planar densities F = r or rfrak with the
// edge factor 1/sqrt(c^2 s^2 - rho^2), through s = rho/c + u^2.
template <class Weight>
double planar_composition(const TelegraphSpec& spec, double rho, double t, bool odd_law, Weight weight) {
  const double lam = spec.lambda, c = spec.c;
  const double s0 = rho / c;
  auto f = [&](double u) {
    const double s = s0 + u * u;
    const double root = u * std::sqrt(c * (c * s + rho));  // sqrt(c^2 s^2 - rho^2)
    const double k = std::sqrt(c * (c * s + rho));
    double e = std::exp(-lam * s + lam / c * root);
    if (odd_law) e += std::exp(-lam * s - lam / c * root);
    // 2u from ds cancels the u in root
    return lam / (pi * c) * e / k * weight(s);
  };
  const double u_max = std::sqrt(reflected_cutoff(t));
  // the integrand is flat up to u ~ sqrt(rho/c) and decays like 1/u beyond,
  // so the outer piece is integrated in log u
  const double split = std::min(std::sqrt(s0), 0.5 * u_max);
  auto g = [&](double w) {
    const double u = std::exp(w);
    return f(u) * u;
  };
  return quad::gauss_kronrod(f, 0.0, split, 1e-12).value +
         quad::gauss_kronrod(g, std::log(split), std::log(u_max), 1e-12).value;
}

}  // namespace

void validate(const ModelParams& p) {
  if (!(p.nu > 0.0 && p.nu <= 0.5)) throw DomainError("model: nu must lie in (0, 1/2]");
  if (!(p.beta > 0.0 && p.beta <= 1.0)) throw DomainError("model: beta must lie in (0, 1]");
  if (!(p.lambda > 0.0) || !std::isfinite(p.lambda)) throw DomainError("model: lambda must be positive");
  if (!(p.c > 0.0) || !std::isfinite(p.c)) throw DomainError("model: c must be positive");
  if (p.n < 1) throw DomainError("model: n must be at least 1");
}

CharPoint w_char(const ModelParams& params, std::span<const double> xi, double t) {
  validate(params);
  if (xi.size() != static_cast<std::size_t>(params.n)) throw DomainError("w_char: dim(xi) != n");
  if (!(t >= 0.0)) throw DomainError("w_char: t must be non-negative");
  CharPoint out{std::vector<double>(xi.begin(), xi.end()), t, 1.0};
  double norm2 = 0.0;
  for (double x : xi) norm2 += x * x;
  if (norm2 == 0.0) return out;
  const double gamma = params.c * params.c * std::pow(norm2, params.beta);
  if (!(gamma < params.lambda * params.lambda))
    throw BranchError("w_char: needs lambda^2 > c^2 |xi|^{2 beta}");
  out.value = inverse_density_laplace({params.nu, params.lambda}, gamma, t);
  return out;
}

SampleBatch sample_W(const ModelParams& params, double t, std::size_t count, std::uint64_t seed,
                     InverseOptions options, Exec exec) {
  validate(params);
  check_time(t, "sample_W: t must be positive");
  if (count == 0) throw DomainError("sample_W: count must be positive");
  const CompositeSpec inner{params.nu, params.lambda};
  InverseMethod method = options.method;
  if (method == InverseMethod::automatic) method = is_half(params.nu) ? InverseMethod::exact_half : InverseMethod::path;
  if (method == InverseMethod::exact_half && !is_half(params.nu))
    throw DomainError("sample_W: exact sampler exists only for nu = 1/2");
  const double ds = options.ds > 0.0 ? options.ds : t / 2048.0;
  const std::size_t dim = static_cast<std::size_t>(params.n);
  const double c2 = params.c * params.c;

  SampleBatch out{t, dim, seed, std::vector<double>(count * dim)};
  for_each_block(count, seed, exec, [&](Rng& rng, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double clock = method == InverseMethod::exact_half
                               ? draw_inverse_half_exact(params.lambda, t, rng)
                               : draw_inverse_path(inner, t, ds, options.max_steps, rng);
      draw_isotropic_stable(params.beta, params.n, c2 * clock, rng, out.values.data() + i * dim);
    }
  });
  return out;
}

double reflected_bm_density(double s, double t) {
  check_time(t, "reflected_bm_density: t must be positive");
  if (s < 0.0) return 0.0;
  return std::exp(-s * s / (4.0 * t)) / std::sqrt(pi * t);
}

SampleBatch sample_TB(const TelegraphSpec& spec, double t, std::size_t count, std::uint64_t seed, Exec exec) {
  validate(spec);
  check_time(t, "sample_TB: t must be positive");
  if (count == 0) throw DomainError("sample_TB: count must be positive");
  const double scale = std::sqrt(2.0 * t);
  SampleBatch out{t, 1, seed, std::vector<double>(count)};
  for_each_block(count, seed, exec, [&](Rng& rng, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double s = scale * std::fabs(rng.normal());
      out.values[i] = draw_telegraph(spec, s, rng);
    }
  });
  return out;
}

double tb_frac_char(const TelegraphSpec& spec, double beta, double xi, double t) {
  validate(spec);
  check_time(t, "tb_frac_char: t must be positive");
  auto f = [&](double s) { return telegraph_frac_char(spec, beta, xi, s) * reflected_bm_density(s, t); };
  return quad::gauss_kronrod(f, 0.0, reflected_cutoff(t), 1e-12).value;
}

double w_density_1d_half(const TelegraphSpec& spec, double x, double t) {
  validate(spec);
  check_time(t, "w_density_1d_half: t must be positive");
  const double lam = spec.lambda, c = spec.c;
  const double a = x * x / (4.0 * c * c * t), b = lam * lam * t;
  // s = t sin^2(theta) absorbs (s (t - s))^{-1/2} at both ends
  auto f = [&](double theta) {
    const double sn = std::sin(theta), cs = std::cos(theta);
    if (cs <= 0.0) return 0.0;
    const double s2 = sn * sn, c2 = cs * cs;
    if (s2 == 0.0) return a > 0.0 ? 0.0 : 1.0;
    const double expo = -a / s2 - b * s2 * s2 / c2;
    return std::exp(expo) * (1.0 + 0.5 * s2 / c2);
  };
  // the second exponential confines the mass to sin^2 theta of order 1/sqrt(b)
  const double knee = std::asin(std::min(1.0, std::pow(1.0 + b, -0.25)));
  const double v = quad::gauss_kronrod(f, 0.0, knee, 1e-12).value + quad::gauss_kronrod(f, knee, 0.5 * pi, 1e-12).value;
  return 2.0 * lam / (c * pi) * v;
}

double iterated_bm_density(double x, double t) {
  check_time(t, "iterated_bm_density: t must be positive");
  // y = u^2 turns e^{-x^2/(4y)}/sqrt(y) dy into a smooth integrand
  auto f = [&](double u) {
    if (u == 0.0) return x == 0.0 ? 1.0 : 0.0;
    return std::exp(-x * x / (4.0 * u * u) - u * u * u * u / t);
  };
  const double u_max = 3.1 * std::pow(t, 0.25);  // u^4/t reaches 92
  const double knee = std::min(0.5 * u_max, std::sqrt(std::fabs(x)) + 1e-3);
  const double v = quad::gauss_kronrod(f, 0.0, knee, 1e-12).value + quad::gauss_kronrod(f, knee, u_max, 1e-12).value;
  return 2.0 * 2.0 / (std::sqrt(4.0 * pi) * std::sqrt(pi * t)) * v;
}

double planar_q_density(const TelegraphSpec& spec, double x, double y, double t) {
  validate(spec);
  check_time(t, "planar_q_density: t must be positive");
  const double rho = std::hypot(x, y);
  if (rho == 0.0) return std::numeric_limits<double>::infinity();
  return planar_composition(spec, rho, t, false, [t](double s) { return reflected_bm_density(s, t); });
}

double planar_qfrak_density(const TelegraphSpec& spec, double x, double y, double t) {
  validate(spec);
  check_time(t, "planar_qfrak_density: t must be positive");
  const double rho = std::hypot(x, y);
  if (rho == 0.0) return std::numeric_limits<double>::infinity();
  const double inv = 1.0 / (2.0 * spec.lambda);
  return planar_composition(spec, rho, t, true, [t, inv](double s) {
    return reflected_bm_density(s, t) + inv * half_derivative_kernel(s, t);
  });
}

double planar_q_boundary_mass(const TelegraphSpec& spec, double t) {
  validate(spec);
  check_time(t, "planar_q_boundary_mass: t must be positive");
  auto f = [&](double s) { return std::exp(-spec.lambda * s) * reflected_bm_density(s, t); };
  return quad::gauss_kronrod(f, 0.0, reflected_cutoff(t), 1e-13).value;
}

PlanarBatch sample_planar_TB(const TelegraphSpec& spec, double t, std::size_t count, std::uint64_t seed,
                             Exec exec) {
  validate(spec);
  check_time(t, "sample_planar_TB: t must be positive");
  if (count == 0) throw DomainError("sample_planar_TB: count must be positive");
  const double scale = std::sqrt(2.0 * t);
  PlanarBatch out{t, seed, std::vector<PlanarSample>(count)};
  for_each_block(count, seed, exec, [&](Rng& rng, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double s = scale * std::fabs(rng.normal());
      out.samples[i] = s > 0.0 ? draw_planar(spec, s, rng) : PlanarSample{0.0, 0.0, true, false};
    }
  });
  return out;
}

}  // namespace fractel
