#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fractel/errors.hpp"
#include "fractel/rng.hpp"
#include "fractel/stable.hpp"
#include "fractel/subord.hpp"
#include "fractel/verify.hpp"

using namespace fractel;

namespace {

double max_error(const GridFunction& d, const std::function<double(double)>& exact, double from = 0.0) {
  double w = 0.0;
  for (std::size_t i = 0; i < d.grid.size(); ++i)
    if (d.grid[i] >= from) w = std::max(w, std::fabs(d.values[i] - exact(d.grid[i])));
  return w;
}

// least-squares slope of log(err) against log(1/h)
double empirical_order(const std::vector<double>& h, const std::vector<double>& err) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = -std::log(h[i]), y = std::log(err[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> normals(std::size_t n, std::uint64_t seed, double shift) {
  Rng rng(seed, 0);
  std::vector<double> v(n);
  for (auto& x : v) x = shift + rng.normal();
  return v;
}

// (-Delta)^beta e^{-x^2} at x = 0, from the inverse Fourier integral of |xi|^{2 beta} sqrt(pi) e^{-xi^2/4}
double riesz_gaussian_at_zero(double beta) {
  return -std::pow(2.0, 2.0 * beta) * std::tgamma(beta + 0.5) / std::sqrt(std::numbers::pi);
}

GridFunction gaussian_grid(double h, std::size_t intervals, double shift = 0.0) {
  const double half = h * static_cast<double>(intervals / 2);
  return sample_uniform([shift](double x) { return std::exp(-(x - shift) * (x - shift)); }, -half, half, intervals);
}

}  // namespace

TEST_CASE("Caputo derivative of simple functions") {
  auto one = sample_uniform([](double) { return 1.0; }, 0.0, 1.0, 50);
  for (double v : caputo_derivative(one, 0.3).values) CHECK(v == 0.0);

  // the L1 scheme is exact on piecewise-linear data
  auto lin = sample_uniform([](double t) { return t; }, 0.0, 2.0, 200);
  const double err = max_error(caputo_derivative(lin, 0.5), [](double t) { return 2.0 * std::sqrt(t / std::numbers::pi); });
  CHECK(err < 1e-12);

  // order one: second-order backward differences are exact on quadratics after the first step
  auto sq = sample_uniform([](double t) { return t * t; }, 0.0, 1.0, 100);
  auto d = caputo_derivative(sq, 1.0);
  CHECK(max_error(d, [](double t) { return 2.0 * t; }, 0.015) < 1e-12);
}

TEST_CASE("Caputo derivative rejects bad grids and orders") {
  GridFunction g{{0.0, 0.1, 0.3, 0.4}, {1, 1, 1, 1}};
  CHECK_THROWS_AS(caputo_derivative(g, 0.5), ContractError);
  GridFunction off{{0.1, 0.2, 0.3, 0.4}, {1, 1, 1, 1}};
  CHECK_THROWS_AS(caputo_derivative(off, 0.5), ContractError);
  auto f = sample_uniform([](double t) { return t; }, 0.0, 1.0, 10);
  CHECK_THROWS_AS(caputo_derivative(f, 1.5), DomainError);
  CHECK_THROWS_AS(caputo_derivative(f, 0.0), DomainError);
}

TEST_CASE("L1 scheme converges with order at least 1.5 on t^2") {
  for (double a : {0.25, 0.5}) {
    std::vector<double> hs, errs;
    for (std::size_t n : {64, 128, 256, 512, 1024}) {
      auto f = sample_uniform([](double t) { return t * t; }, 0.0, 1.0, n);
      hs.push_back(1.0 / static_cast<double>(n));
      errs.push_back(max_error(caputo_derivative(f, a), [a](double t) { return 2.0 * std::pow(t, 2.0 - a) / std::tgamma(3.0 - a); }));
    }
    const double order = empirical_order(hs, errs);
    INFO("alpha=" << a << " order=" << order);
    CHECK(order >= 1.5);
  }
}

TEST_CASE("Caputo eigenfunction residual vanishes under refinement") {
  const double nu = 0.3, r = -1.0;
  double prev = 0.0;
  for (std::size_t n : {100, 200, 400, 800}) {
    auto f = sample_uniform([&](double t) { return t == 0.0 ? 1.0 : mittag_leffler({nu, 1.0}, r * std::pow(t, nu)).value; }, 0.0, 2.0, n);
    auto d = caputo_derivative(f, nu);
    double w = 0.0;
    for (std::size_t i = 0; i < d.grid.size(); ++i)
      if (d.grid[i] >= 0.5) w = std::max(w, std::fabs(d.values[i] - r * f.values[i + 1]));
    if (prev > 0.0) CHECK(w < 0.5 * prev);
    prev = w;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("Riemann-Liouville derivative") {
  auto zero = sample_uniform([](double) { return 0.0; }, 0.0, 1.0, 40);
  for (double v : riemann_liouville_derivative(zero, 0.4).values) CHECK(v == 0.0);

  // RL f - Caputo f = f(0) t^{-a}/Gamma(1-a): gap shrinks with the step
  double prev = 0.0;
  for (std::size_t n : {200, 400, 800, 1600}) {
    auto f = sample_uniform([](double t) { return std::exp(-t); }, 0.0, 2.0, n);
    auto rl = riemann_liouville_derivative(f, 0.4);
    auto c = caputo_derivative(f, 0.4);
    double gap = 0.0;
    for (std::size_t i = 0; i < rl.grid.size(); ++i)
      if (rl.grid[i] >= 0.5)
        gap = std::max(gap, std::fabs(rl.values[i] - c.values[i] - std::pow(rl.grid[i], -0.4) / std::tgamma(0.6)));
    if (prev > 0.0) CHECK(gap < 0.55 * prev);
    prev = gap;
  }
  CHECK(prev < 5e-4);

  // t^a has constant RL derivative Gamma(a + 1)
  prev = 0.0;
  for (std::size_t n : {200, 400, 800, 1600}) {
    auto f = sample_uniform([](double t) { return std::pow(t, 0.4); }, 0.0, 2.0, n);
    const double e = max_error(riemann_liouville_derivative(f, 0.4), [](double) { return std::tgamma(1.4); }, 0.5);
    if (prev > 0.0) CHECK(e < 0.5 * prev);
    prev = e;
  }
}

TEST_CASE("double-order Caputo identity for the Mittag-Leffler function") {
  CHECK(caputo_double_eigen_check(0.3, 0.0, 1.0, 100, 0.0) == 0.0);
  for (auto [nu, r] : {std::pair{0.2, -1.0}, std::pair{0.25, -2.0}}) {
    double prev = 0.0;
    for (std::size_t n : {200, 400, 800, 1600}) {
      const double res = caputo_double_eigen_check(nu, r, 2.0, n, 0.5);
      INFO("nu=" << nu << " r=" << r << " n=" << n << " residual=" << res);
      if (prev > 0.0) CHECK(res <= 0.5 * prev);
      prev = res;
    }
    CHECK(prev < 2e-4);
  }
  CHECK_THROWS_AS(caputo_double_eigen_check(0.6, -1.0, 1.0, 10, 0.0), DomainError);
}

TEST_CASE("fractional ODE residual") {
  auto one = sample_uniform([](double) { return 1.0; }, 0.0, 1.0, 64);
  CHECK(frac_ode_residual(0.3, 1.0, 0.0, one, 0.0) == 0.0);
  struct Case {
    double nu, lam, coeff;
  };
  for (const Case c : {Case{0.5, 1.0, 0.5}, Case{1.0 / 3.0, 2.0, 1.0}}) {
    const CompositeSpec spec{c.nu, c.lam};
    double prev = 0.0;
    for (std::size_t n : {200, 400, 800, 1600}) {
      auto f = sample_uniform([&](double t) { return inverse_density_laplace(spec, c.coeff, t); }, 0.0, 2.0, n);
      const double res = frac_ode_residual(c.nu, c.lam, c.coeff, f, 0.5);
      INFO("nu=" << c.nu << " n=" << n << " residual=" << res);
      if (prev > 0.0) CHECK(res <= 0.5 * prev);
      prev = res;
    }
  }
}

TEST_CASE("singular-integral Riesz operator") {
  auto g = [](double x) { return std::exp(-x * x); };
  for (double beta : {0.1, 0.2, 0.35, 0.45}) {
    auto r = riesz_singular(g, {0.0}, beta);
    INFO("beta=" << beta);
    CHECK(r.values[0] == doctest::Approx(riesz_gaussian_at_zero(beta)).epsilon(1e-8));
  }
  auto z = riesz_singular([](double) { return 0.0; }, {-1.0, 0.0, 2.0}, 0.3);
  for (double v : z.values) CHECK(v == 0.0);

  // translation equivariance
  const double a = 0.7;
  std::vector<double> xs{-1.5, -0.2, 0.4, 1.9};
  std::vector<double> shifted;
  for (double x : xs) shifted.push_back(x - a);
  auto moved = riesz_singular([&](double x) { return g(x - a); }, xs, 0.3);
  auto base = riesz_singular(g, shifted, 0.3);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(moved.values[i] == doctest::Approx(base.values[i]).epsilon(1e-9));

  CHECK_THROWS_AS(riesz_singular(g, {0.0}, 0.5), DomainError);
  CHECK(riesz_constant(0.25) == doctest::Approx(0.5 / (2.0 * std::sqrt(std::numbers::pi) * std::cos(std::numbers::pi / 4.0))));
}

TEST_CASE("spectral Riesz operator") {
  // a long period keeps the algebraic tails of the image from wrapping around
  const double h = 0.1;
  const std::size_t n = 1 << 15;
  auto f = gaussian_grid(h, n);
  const std::size_t mid = n / 2;

  // beta -> 1: the multiplier tends to -xi^2, i.e. the second derivative (-2 at the origin)
  CHECK(std::fabs(riesz_spectral(f, 0.9999).values[mid] + 2.0) < 1e-3);
  CHECK(std::fabs(riesz_spectral(f, 1.0).values[mid] + 2.0) < 1e-9);

  // linearity
  auto g = gaussian_grid(h, n, 1.3);
  GridFunction comb = f;
  for (std::size_t i = 0; i < comb.values.size(); ++i) comb.values[i] = 2.0 * f.values[i] - 0.5 * g.values[i];
  auto lf = riesz_spectral(f, 0.3), lg = riesz_spectral(g, 0.3), lc = riesz_spectral(comb, 0.3);
  double worst = 0.0;
  for (std::size_t i = 0; i < lc.values.size(); ++i)
    worst = std::max(worst, std::fabs(lc.values[i] - (2.0 * lf.values[i] - 0.5 * lg.values[i])));
  CHECK(worst < 1e-13);

  GridFunction wide = sample_uniform([](double x) { return std::exp(-0.01 * x * x); }, -10.0, 10.0, 256);
  CHECK_THROWS_AS(riesz_spectral(wide, 0.3), ContractError);
}

TEST_CASE("spectral and singular Riesz operators agree") {
  const double h = 0.1;
  const std::size_t n = 1 << 15;
  auto f = gaussian_grid(h, n);
  auto u = [](double x) { return std::exp(-x * x); };
  for (double beta : {0.2, 0.4}) {
    auto sp = riesz_spectral(f, beta);
    std::vector<double> xs;
    std::vector<double> spv;
    for (std::size_t i = n / 2 - 60; i <= n / 2 + 60; i += 3) {
      xs.push_back(sp.grid[i]);
      spv.push_back(sp.values[i]);
    }
    auto si = riesz_singular(u, xs, beta);
    double diff = 0.0, sup = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      diff = std::max(diff, std::fabs(si.values[i] - spv[i]));
      sup = std::max(sup, std::fabs(si.values[i]));
    }
    INFO("beta=" << beta << " sup-norm relative difference=" << diff / sup);
    CHECK(diff / sup <= 1e-3);
  }
}

TEST_CASE("numerical Laplace transform") {
  CHECK(numerical_laplace([](double) { return 1.0; }, 0.5).value == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(numerical_laplace([](double t) { return std::exp(-t); }, 2.0).value == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  const auto r = numerical_laplace([](double x) { return subordinator_density(0.5, x, 1.0); }, 1.0);
  CHECK(r.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
  CHECK(r.est_abs_error < 1e-9);
  CHECK_THROWS_AS(numerical_laplace([](double) { return 1.0; }, 0.0), DomainError);
}

TEST_CASE("empirical characteristic function") {
  SampleBatch b{1.0, 1, 0, normals(20000, 3, 0.0)};
  const double zero[1] = {0.0};
  CHECK(empirical_char(b, zero).value == 1.0);

  SampleBatch c{1.0, 1, 0, std::vector<double>(100, 0.8)};
  const double xi[1] = {1.7};
  CHECK(empirical_char(c, xi).value == doctest::Approx(std::cos(1.7 * 0.8)).epsilon(1e-14));

  // X = sqrt(2 t) Z has E cos(xi X) = e^{-xi^2 t}
  const double t = 0.6;
  for (auto& v : b.values) v *= std::sqrt(2.0 * t);
  for (double x : {0.5, 1.0, 2.0}) {
    const double q[1] = {x};
    const auto e = empirical_char(b, q);
    CHECK(std::fabs(e.value - std::exp(-x * x * t)) < 4.0 * e.std_error);
    CHECK(std::fabs(e.imag) < 0.05);
  }
}

TEST_CASE("two-sample Kolmogorov-Smirnov test") {
  auto a = normals(10000, 1, 0.0);
  auto same = ks_two_sample(a, a, 0.01);
  CHECK(same.statistic == 0.0);
  CHECK(same.pass);

  auto b = normals(10000, 2, 0.0);
  auto ab = ks_two_sample(a, b, 0.01), ba = ks_two_sample(b, a, 0.01);
  CHECK(ab.pass);
  CHECK(ab.statistic == ba.statistic);
  CHECK(ab.critical == doctest::Approx(ks_critical_constant(0.01) * std::sqrt(2.0 / 10000.0)));

  CHECK_FALSE(ks_two_sample(a, normals(10000, 3, 1.0), 0.01).pass);

  // false rejections of equal laws stay near the nominal level
  int rejected = 0;
  for (std::uint64_t s = 0; s < 200; ++s)
    if (!ks_two_sample(normals(10000, 100 + 2 * s, 0.0), normals(10000, 101 + 2 * s, 0.0), 0.01).pass) ++rejected;
  CHECK(rejected <= 6);

  CHECK(ks_critical_constant(0.05) == doctest::Approx(1.3581).epsilon(1e-4));
}

TEST_CASE("one-sample Kolmogorov-Smirnov test and uniformity") {
  auto a = normals(20000, 9, 0.0);
  auto phi = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
  CHECK(ks_one_sample(a, phi, 0.01).pass);
  CHECK_FALSE(ks_one_sample(a, [&](double x) { return phi(x - 0.1); }, 0.01).pass);

  Rng rng(4, 0);
  std::vector<double> u(20000);
  for (auto& v : u) v = rng.uniform();
  CHECK(chi_square_uniform_pvalue(u, 0.0, 1.0, 20) > 0.001);
  for (auto& v : u) v = v * v;
  CHECK(chi_square_uniform_pvalue(u, 0.0, 1.0, 20) < 1e-6);
}

TEST_CASE("Airy function integrates to 2/3 over the negative half-line") {
  const auto r = airy_negative_half_line_integral();
  CHECK(std::fabs(r.value - 2.0 / 3.0) < 1e-8);
  CHECK(r.est_abs_error < 1e-8);
}
