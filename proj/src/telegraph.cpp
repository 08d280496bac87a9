#include "fractel/telegraph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fractel/errors.hpp"
#include "fractel/quadrature.hpp"
#include "fractel/specfun.hpp"

namespace fractel {

namespace {

constexpr double pi = std::numbers::pi;

void check_time(double t, const char* what) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError(what);
}

// sinh(x)/x and sin(x)/x without loss near zero
double sinhc(double x) { return std::fabs(x) < 1e-8 ? 1.0 : std::sinh(x) / x; }
double sinc(double x) { return std::fabs(x) < 1e-8 ? 1.0 : std::sin(x) / x; }

// (1/2)[(1 + lam/s) e^{-lam t + s t} + (1 - lam/s) e^{-lam t - s t}], s^2 = lam^2 - q
double char_from_square(double lam, double q, double t) {
  const double d = lam * lam - q;
  if (d >= 0.0) {
    const double s = std::sqrt(d);
    const double st = s * t;
    if (st < 1.0) return std::exp(-lam * t) * (std::cosh(st) + lam * t * sinhc(st));
    // exponential form: the two terms cannot cancel by more than 1 - e^{-2}
    return 0.5 * (1.0 + lam / s) * std::exp(-(lam - s) * t) + 0.5 * (1.0 - lam / s) * std::exp(-(lam + s) * t);
  }
  const double w = std::sqrt(-d);
  return std::exp(-lam * t) * (std::cos(w * t) + lam * t * sinc(w * t));
}

// Planar densities in terms of s = sqrt(c^2 t^2 - rho^2).
double r_of_s(double lam, double c, double t, double s) {
  return lam / (2.0 * pi * c) * std::exp(-lam * t + lam / c * s) / s;
}

double rfrak_of_s(double lam, double c, double t, double s) {
  return lam / (2.0 * pi * c) * (std::exp(-lam * t + lam / c * s) + std::exp(-lam * t - lam / c * s)) / s;
}

double edge_distance(double c, double t, double rho) {
  const double ct = c * t;
  return std::sqrt((ct - rho) * (ct + rho));
}

double log_poisson(double mean, int n) {
  return -mean + n * std::log(mean) - std::lgamma(n + 1.0);
}

// Index of an odd count K with P(K = n) proportional to m^n / n!.
int draw_odd_count(double m, Rng& rng) {
  if (m > 20.0) {
    // P(Poisson odd) is (1 - e^{-2m})/2, so rejection accepts about half the time
    for (;;) {
      const auto n = rng.poisson(m);
      if (n % 2 == 1) return static_cast<int>(n);
    }
  }
  double u = rng.uniform() * std::sinh(m);
  double term = m;
  int n = 1;
  while (u > term && n < 400) {
    u -= term;
    term *= m * m / ((n + 1.0) * (n + 2.0));
    n += 2;
  }
  return n;
}

PlanarSample finish_planar(double x, double y, double ct, bool on_boundary) {
  const double r = std::hypot(x, y);
  // keep the support invariant exact despite rounding in cos^2 + sin^2
  if (r > ct) {
    x *= ct / r;
    y *= ct / r;
  }
  return {x, y, on_boundary, false};
}

}  // namespace

void validate(const TelegraphSpec& spec) {
  if (!(spec.lambda > 0.0) || !std::isfinite(spec.lambda)) throw DomainError("telegraph: lambda must be positive");
  if (!(spec.c > 0.0) || !std::isfinite(spec.c)) throw DomainError("telegraph: c must be positive");
}

std::vector<double> PlanarBatch::radii(bool skip_boundary, bool skip_defect) const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    if ((skip_boundary && s.on_boundary) || (skip_defect && s.defect)) continue;
    out.push_back(s.defect ? std::numeric_limits<double>::quiet_NaN() : std::hypot(s.x, s.y));
  }
  return out;
}

double DensityGrid::total_mass() const {
  double m = ac_mass + defect_mass;
  for (const auto& a : atoms) m += a.mass;
  for (const auto& a : singular_arcs) m += a.mass;
  return m;
}

double draw_telegraph(const TelegraphSpec& spec, double t, Rng& rng) {
  if (t == 0.0) return 0.0;
  double sign = rng.uniform() < 0.5 ? 1.0 : -1.0;
  double pos = 0.0, remaining = t;
  for (;;) {
    const double tau = rng.exponential() / spec.lambda;
    if (tau >= remaining) {
      pos += sign * remaining;
      break;
    }
    pos += sign * tau;
    remaining -= tau;
    sign = -sign;
  }
  return spec.c * std::clamp(pos, -t, t);
}

SampleBatch sample_telegraph(const TelegraphSpec& spec, double t, std::size_t count,
                             std::uint64_t seed, Exec exec) {
  validate(spec);
  check_time(t, "sample_telegraph: t must be positive");
  if (count == 0) throw DomainError("sample_telegraph: count must be positive");
  SampleBatch out{t, 1, seed, std::vector<double>(count)};
  for_each_block(count, seed, exec, [&](Rng& rng, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out.values[i] = draw_telegraph(spec, t, rng);
  });
  return out;
}

double telegraph_pdf(const TelegraphSpec& spec, double x, double t) {
  validate(spec);
  check_time(t, "telegraph_pdf: t must be positive");
  const double lam = spec.lambda, c = spec.c, ct = c * t;
  if (!(std::fabs(x) <= ct)) return 0.0;
  const double z = lam / c * edge_distance(c, t, std::fabs(x));
  // e^{-lam t} [lam I0(z) + lam^2 t I1(z)/z] / (2c), with the exponential folded into the scaled Bessels
  const double scale = std::exp(z - lam * t);
  const double i1_over_z = z < 1e-8 ? 0.5 : bessel_i1_scaled(z) / z;
  return scale * (lam * bessel_i0_scaled(z) + lam * lam * t * i1_over_z) / (2.0 * c);
}

DensityGrid telegraph_density(const TelegraphSpec& spec, double t, std::size_t points) {
  validate(spec);
  check_time(t, "telegraph_density: t must be positive");
  if (points < 2) throw DomainError("telegraph_density: need at least two points");
  const double ct = spec.c * t;
  DensityGrid g;
  g.points.resize(points);
  g.pdf.resize(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double x = i + 1 == points ? ct : -ct + 2.0 * ct * static_cast<double>(i) / static_cast<double>(points - 1);
    g.points[i] = x;
    g.pdf[i] = telegraph_pdf(spec, x, t);
  }
  const double atom = 0.5 * std::exp(-spec.lambda * t);
  g.atoms = {{-ct, atom}, {ct, atom}};
  const auto q = quad::gauss_kronrod([&](double x) { return telegraph_pdf(spec, x, t); }, -ct, ct, 1e-12);
  g.ac_mass = q.value;
  g.ac_mass_error = q.abs_error;
  return g;
}

double telegraph_char(const TelegraphSpec& spec, double xi, double t) {
  validate(spec);
  if (!(t >= 0.0)) throw DomainError("telegraph_char: t must be non-negative");
  return char_from_square(spec.lambda, spec.c * spec.c * xi * xi, t);
}

double telegraph_frac_char(const TelegraphSpec& spec, double beta, double xi, double t) {
  validate(spec);
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("telegraph_frac_char: beta in (0, 1]");
  if (!(t >= 0.0)) throw DomainError("telegraph_frac_char: t must be non-negative");
  return char_from_square(spec.lambda, spec.c * spec.c * std::pow(std::fabs(xi), 2.0 * beta), t);
}

PlanarSample draw_planar(const TelegraphSpec& spec, double t, Rng& rng) {
  const double c = spec.c;
  double x = 0.0, y = 0.0, remaining = t;
  bool moved = false;
  for (;;) {
    const double theta = 2.0 * pi * rng.uniform();
    const double tau = rng.exponential() / spec.lambda;
    const double step = std::min(tau, remaining);
    x += c * step * std::cos(theta);
    y += c * step * std::sin(theta);
    if (tau >= remaining) break;
    remaining -= tau;
    moved = true;
  }
  return finish_planar(x, y, c * t, !moved);
}

PlanarBatch sample_planar(const TelegraphSpec& spec, double t, std::size_t count,
                          std::uint64_t seed, Exec exec) {
  validate(spec);
  check_time(t, "sample_planar: t must be positive");
  if (count == 0) throw DomainError("sample_planar: count must be positive");
  PlanarBatch out{t, seed, std::vector<PlanarSample>(count)};
  for_each_block(count, seed, exec, [&](Rng& rng, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out.samples[i] = draw_planar(spec, t, rng);
  });
  return out;
}

PlanarBatch sample_planar_odd(const TelegraphSpec& spec, double t, std::size_t count,
                              std::uint64_t seed, Exec exec) {
  validate(spec);
  check_time(t, "sample_planar_odd: t must be positive");
  if (count == 0) throw DomainError("sample_planar_odd: count must be positive");
  const double m = spec.lambda * t, c = spec.c;
  const double defect = std::exp(-2.0 * m);
  PlanarBatch out{t, seed, std::vector<PlanarSample>(count)};
  for_each_block(count, seed, exec, [&](Rng& rng, std::size_t begin, std::size_t end) {
    std::vector<double> epochs;
    for (std::size_t i = begin; i < end; ++i) {
      if (rng.uniform() < defect) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        out.samples[i] = {nan, nan, false, true};
        continue;
      }
      // given K changes, the epochs are uniform order statistics on [0, t]
      const int k = draw_odd_count(m, rng);
      epochs.resize(static_cast<std::size_t>(k));
      for (auto& e : epochs) e = t * rng.uniform();
      std::sort(epochs.begin(), epochs.end());
      double x = 0.0, y = 0.0, prev = 0.0;
      for (std::size_t j = 0; j <= epochs.size(); ++j) {
        const double next = j < epochs.size() ? epochs[j] : t;
        const double theta = 2.0 * pi * rng.uniform();
        x += c * (next - prev) * std::cos(theta);
        y += c * (next - prev) * std::sin(theta);
        prev = next;
      }
      out.samples[i] = finish_planar(x, y, c * t, false);
    }
  });
  return out;
}

double planar_pdf(const TelegraphSpec& spec, double rho, double t) {
  validate(spec);
  check_time(t, "planar_pdf: t must be positive");
  rho = std::fabs(rho);
  if (!(rho < spec.c * t)) return 0.0;
  return r_of_s(spec.lambda, spec.c, t, edge_distance(spec.c, t, rho));
}

double planar_frak_pdf(const TelegraphSpec& spec, double rho, double t) {
  validate(spec);
  check_time(t, "planar_frak_pdf: t must be positive");
  rho = std::fabs(rho);
  if (!(rho < spec.c * t)) return 0.0;
  return rfrak_of_s(spec.lambda, spec.c, t, edge_distance(spec.c, t, rho));
}

double planar_conditional_pdf(const TelegraphSpec& spec, double rho, double t, int n) {
  validate(spec);
  check_time(t, "planar_conditional_pdf: t must be positive");
  if (n < 1) throw DomainError("planar_conditional_pdf: n >= 1");
  const double ct = spec.c * t;
  rho = std::fabs(rho);
  if (!(rho < ct)) return 0.0;
  const double u = (ct - rho) * (ct + rho) / (ct * ct);
  return n / (2.0 * pi * ct * ct) * std::pow(u, 0.5 * n - 1.0);
}

double planar_pdf_mixture(const TelegraphSpec& spec, double rho, double t, int terms) {
  const double m = spec.lambda * t;
  double sum = 0.0;
  for (int n = 1; n <= terms; ++n) sum += std::exp(log_poisson(m, n)) * planar_conditional_pdf(spec, rho, t, n);
  return sum;
}

double planar_frak_pdf_mixture(const TelegraphSpec& spec, double rho, double t, int terms) {
  const double m = spec.lambda * t;
  double sum = 0.0;
  for (int n = 1; n <= terms; n += 2) sum += 2.0 * std::exp(log_poisson(m, n)) * planar_conditional_pdf(spec, rho, t, n);
  return sum;
}

double planar_radial_cdf(const TelegraphSpec& spec, double rho, double t) {
  validate(spec);
  check_time(t, "planar_radial_cdf: t must be positive");
  if (rho < 0.0) return 0.0;
  if (rho >= spec.c * t) return 1.0;
  const double s = edge_distance(spec.c, t, rho);
  return -std::expm1(spec.lambda * (s / spec.c - t));
}

double planar_frak_radial_cdf(const TelegraphSpec& spec, double rho, double t) {
  validate(spec);
  check_time(t, "planar_frak_radial_cdf: t must be positive");
  if (rho < 0.0) return 0.0;
  if (rho >= spec.c * t) return 1.0;
  const double a = spec.lambda * edge_distance(spec.c, t, rho) / spec.c, b = spec.lambda * t;
  // 1 - sinh(a)/sinh(b), written to stay finite for large b
  return 1.0 - std::exp(a - b) * std::expm1(-2.0 * a) / std::expm1(-2.0 * b);
}

DensityGrid planar_density(const TelegraphSpec& spec, double t, std::size_t points) {
  validate(spec);
  check_time(t, "planar_density: t must be positive");
  if (points < 2) throw DomainError("planar_density: need at least two points");
  const double lam = spec.lambda, c = spec.c, ct = c * t;
  DensityGrid g;
  for (std::size_t i = 0; i < points; ++i) {
    const double rho = ct * static_cast<double>(i) / static_cast<double>(points);
    g.points.push_back(rho);
    g.pdf.push_back(planar_pdf(spec, rho, t));
  }
  g.singular_arcs = {{ct, std::exp(-lam * t)}};
  // rho d rho = -s ds removes the edge singularity
  const auto q = quad::gauss_kronrod([&](double s) { return 2.0 * pi * s * r_of_s(lam, c, t, s); }, 0.0, ct, 1e-12);
  g.ac_mass = q.value;
  g.ac_mass_error = q.abs_error;
  return g;
}

DensityGrid planar_density_frak(const TelegraphSpec& spec, double t, std::size_t points) {
  validate(spec);
  check_time(t, "planar_density_frak: t must be positive");
  if (points < 2) throw DomainError("planar_density_frak: need at least two points");
  const double lam = spec.lambda, c = spec.c, ct = c * t;
  DensityGrid g;
  for (std::size_t i = 0; i < points; ++i) {
    const double rho = ct * static_cast<double>(i) / static_cast<double>(points);
    g.points.push_back(rho);
    g.pdf.push_back(planar_frak_pdf(spec, rho, t));
  }
  g.defect_mass = std::exp(-2.0 * lam * t);
  const auto q = quad::gauss_kronrod([&](double s) { return 2.0 * pi * s * rfrak_of_s(lam, c, t, s); }, 0.0, ct, 1e-12);
  g.ac_mass = q.value;
  g.ac_mass_error = q.abs_error;
  return g;
}

}  // namespace fractel
