#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fractel/compose.hpp"
#include "fractel/errors.hpp"
#include "fractel/quadrature.hpp"
#include "fractel/verify.hpp"

using namespace fractel;

namespace {

constexpr double pi = std::numbers::pi;

// E e^{-gamma L(t)} straight from the inverse density
double inverse_laplace_quadrature(double nu, double lam, double gamma, double t) {
  const CompositeSpec spec{nu, lam};
  auto f = [&](double x) { return std::exp(-gamma * x) * inverse_density(spec, x, t); };
  return quad::tanh_sinh(f, 0.0, t, 1e-12).value + quad::half_line(f, t, 1e-12).value;
}

// int 2 pi rho J0(k rho) g(rho) d rho for a radial density g
template <class G>
double hankel(G g, double k, double r_max) {
  auto f = [&](double rho) { return 2.0 * pi * rho * std::cyl_bessel_j(0.0, k * rho) * g(rho); };
  return quad::tanh_sinh(f, 0.0, r_max, 1e-11).value;
}

double sample_variance(const std::vector<double>& v) {
  double m = 0.0, s2 = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  for (double x : v) s2 += (x - m) * (x - m);
  return s2 / static_cast<double>(v.size() - 1);
}

}  // namespace

TEST_CASE("w_char at zero frequency, branch errors and validation") {
  const ModelParams p{0.5, 1.0, 1.0, 1.0, 2};
  const double zero[] = {0.0, 0.0};
  for (double t : {0.0, 0.3, 5.0}) CHECK(w_char(p, zero, t).value == 1.0);
  const double big[] = {1.0, 0.5};
  CHECK_THROWS_AS(w_char(p, big, 1.0), BranchError);
  const double edge[] = {1.0, 0.0};
  CHECK_THROWS_AS(w_char(p, edge, 1.0), BranchError);
  const double one[] = {0.3};
  CHECK_THROWS_AS(w_char(p, one, 1.0), DomainError);
  CHECK_THROWS_AS(validate(ModelParams{0.6, 1.0, 1.0, 1.0, 1}), DomainError);
  CHECK_THROWS_AS(validate(ModelParams{0.5, 0.0, 1.0, 1.0, 1}), DomainError);
  CHECK_THROWS_AS(validate(ModelParams{0.5, 1.0, 1.0, 1.0, 0}), DomainError);
}

TEST_CASE("w_char equals the Laplace transform of the inverse density at c^2 |xi|^{2 beta}") {
  for (double nu : {0.5, 1.0 / 3.0}) {
    for (auto [lam, c, beta, xi, t] : {std::tuple{1.0, 1.0, 1.0, 0.5, 1.0}, {2.0, 1.0, 0.5, 1.3, 0.5},
                                       {1.0, 3.0, 1.0, 0.2, 2.0}, {2.0, 0.7, 0.75, 2.0, 1.5}}) {
      const ModelParams p{nu, beta, lam, c, 1};
      const double x[] = {xi};
      const double gamma = c * c * std::pow(xi, 2.0 * beta);
      CHECK(w_char(p, x, t).value == doctest::Approx(inverse_laplace_quadrature(nu, lam, gamma, t)).epsilon(1e-7));
    }
  }
}

TEST_CASE("w_char is non-increasing in time") {
  for (double nu : {0.5, 1.0 / 3.0, 0.25}) {
    const ModelParams p{nu, 0.8, 1.5, 1.0, 2};
    const double xi[] = {0.6, -0.4};
    double prev = 1.0;
    for (double t = 0.05; t <= 8.0; t *= 1.3) {
      const double v = w_char(p, xi, t).value;
      CHECK(v <= prev + 1e-14);
      CHECK(v > 0.0);
      prev = v;
    }
  }
}

TEST_CASE("sample_W empirical characteristic function") {
  const ModelParams p{0.5, 1.0, 2.0, 1.0, 1};
  auto b = sample_W(p, 1.0, 1000000, 31);
  const double xi[] = {0.5};
  auto e = empirical_char(b, xi);
  CHECK(std::fabs(e.value - w_char(p, xi, 1.0).value) < 4.0 * e.std_error);
  CHECK(std::fabs(e.imag) < 4.0 * e.std_error + 1e-3);

  const ModelParams q{0.5, 0.5, 1.0, 1.0, 2};
  auto b2 = sample_W(q, 1.0, 200000, 32);
  const double xi2[] = {0.3, 0.4};
  auto e2 = empirical_char(b2, xi2);
  CHECK(std::fabs(e2.value - w_char(q, xi2, 1.0).value) < 4.0 * e2.std_error);
  for (std::size_t j = 0; j < 2; ++j) {
    auto col = b2.column(j);
    double m = 0.0;
    for (double x : col) m += x;
    m /= static_cast<double>(col.size());
    CHECK(std::fabs(m) < 4.0 * std::sqrt(sample_variance(col) / col.size()));
  }
}

TEST_CASE("sample_W by grid paths at order 1/3") {
  const ModelParams p{1.0 / 3.0, 1.0, 1.0, 1.0, 1};
  InverseOptions opt;
  opt.ds = 1.0 / 1024;
  auto b = sample_W(p, 1.0, 40000, 33, opt);
  const double xi[] = {0.7};
  auto e = empirical_char(b, xi);
  // the path inverse adds an O(ds) bias well below the MC error here
  CHECK(std::fabs(e.value - w_char(p, xi, 1.0).value) < 4.0 * e.std_error + 2e-3);
}

TEST_CASE("compositions are reproducible across execution modes") {
  const ModelParams p{0.5, 0.7, 1.0, 1.2, 3};
  auto a = sample_W(p, 1.0, 4000, 5, {}, Exec::serial);
  auto b = sample_W(p, 1.0, 4000, 5, {}, Exec::parallel);
  CHECK(a.values == b.values);
  const TelegraphSpec s{1.0, 2.0};
  CHECK(sample_TB(s, 1.0, 4000, 6, Exec::serial).values == sample_TB(s, 1.0, 4000, 6, Exec::parallel).values);
}

TEST_CASE("telegraph at a reflected Brownian time: characteristic function and variance") {
  const TelegraphSpec spec{1.0, 1.0};
  auto b = sample_TB(spec, 1.0, 400000, 41);
  for (double x : b.values) REQUIRE(std::isfinite(x));
  const double xi[] = {0.5};
  auto e = empirical_char(b, xi);
  const ModelParams p{0.5, 1.0, 1.0, 1.0, 1};
  CHECK(std::fabs(e.value - w_char(p, xi, 1.0).value) < 4.0 * e.std_error);

  // variance against the second moment of the closed-form density
  auto m2 = [&](double x) { return 2.0 * x * x * w_density_1d_half(spec, x, 1.0); };
  const double var = quad::half_line(m2, 0.0, 1e-10).value;
  std::vector<double> sq(b.values.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = b.values[i] * b.values[i];
  const double se = std::sqrt(sample_variance(sq) / sq.size());
  CHECK(std::fabs(sample_variance(b.values) - var) < 3.0 * se);
}

TEST_CASE("W and T(|B|) agree in law at order 1/2") {
  for (auto [lam, c, t] : {std::tuple{1.0, 1.0, 1.0}, {2.0, 1.0, 0.5}, {1.0, 3.0, 2.0}}) {
    const ModelParams p{0.5, 1.0, lam, c, 1};
    auto w = sample_W(p, t, 100000, 51);
    auto tb = sample_TB({lam, c}, t, 100000, 52);
    auto ks = ks_two_sample(w, tb, 0.01);
    CHECK(ks.pass);
  }
}

TEST_CASE("one-dimensional composed density: mass, symmetry and Fourier transform") {
  for (auto [lam, c, t] : {std::tuple{1.0, 1.0, 1.0}, {2.0, 1.0, 0.5}, {1.0, 3.0, 2.0}}) {
    const TelegraphSpec spec{lam, c};
    auto f = [&](double x) { return w_density_1d_half(spec, x, t); };
    CHECK(std::fabs(2.0 * quad::half_line(f, 0.0, 1e-11).value - 1.0) < 1e-6);
    for (double x : {0.1, 0.9, 2.5}) CHECK(f(x) == f(-x));
    CHECK(std::all_of(std::begin({0.0, 0.5, 3.0}), std::end({0.0, 0.5, 3.0}), [&](double x) { return f(x) > 0.0; }));
  }
  const TelegraphSpec spec{2.0, 1.0};
  auto g = [&](double x) { return 2.0 * std::cos(x) * w_density_1d_half(spec, x, 1.0); };
  const double ft = quad::gauss_kronrod_tail(g, 0.0, 4.0, 1e-12).value;
  const double xi[] = {1.0};
  CHECK(std::fabs(ft - w_char({0.5, 1.0, 2.0, 1.0, 1}, xi, 1.0).value) < 1e-5);
}

TEST_CASE("iterated Brownian density and the large-rate limit") {
  for (double t : {0.5, 1.0, 3.0}) {
    auto f = [&](double x) { return iterated_bm_density(x, t); };
    CHECK(std::fabs(2.0 * quad::half_line(f, 0.0, 1e-12).value - 1.0) < 1e-8);
    CHECK(f(0.7) == f(-0.7));
  }
  // at x = 0: 2 int (4 pi y)^{-1/2} e^{-y^2/t}/sqrt(pi t) dy = Gamma(1/4) t^{-1/4} / (2 pi)
  CHECK(iterated_bm_density(0.0, 1.0) == doctest::Approx(std::tgamma(0.25) / (2.0 * pi)).epsilon(1e-11));
  for (double x : {0.0, 0.5, 1.0}) {
    const double target = iterated_bm_density(x, 1.0);
    double prev = INFINITY;
    for (double k : {4.0, 16.0, 64.0}) {
      const double gap = std::fabs(w_density_1d_half({k, std::sqrt(k)}, x, 1.0) - target);
      CHECK(gap < prev);
      prev = gap;
    }
    CHECK(prev <= 5e-3);
  }
}

TEST_CASE("planar composition q: mass, radial symmetry, positivity") {
  for (auto [lam, c, t] : {std::tuple{1.0, 1.0, 1.0}, {2.0, 0.5, 0.7}}) {
    const TelegraphSpec spec{lam, c};
    auto g = [&](double rho) { return 2.0 * pi * rho * planar_q_density(spec, rho, 0.0, t); };
    const double r_max = 18.0 * c * std::sqrt(t);
    const double ac = quad::tanh_sinh(g, 0.0, r_max, 1e-11).value;
    auto h = [&](double s) { return std::exp(-lam * s) * std::exp(-s * s / (4.0 * t)) / std::sqrt(pi * t); };
    const double singular = quad::half_line(h, 0.0, 1e-12).value;
    CHECK(planar_q_boundary_mass(spec, t) == doctest::Approx(singular).epsilon(1e-11));
    CHECK(std::fabs(ac + singular - 1.0) < 1e-5);
    for (double r : {0.01, 0.4, 1.5}) {
      const double q = planar_q_density(spec, r, 0.0, t);
      CHECK(q > 0.0);
      CHECK(planar_q_density(spec, r * std::cos(1.1), r * std::sin(1.1), t) == doctest::Approx(q).epsilon(1e-13));
    }
    CHECK(planar_q_density(spec, 40.0, 0.0, t) >= 0.0);
  }
}

TEST_CASE("planar composition qfrak: unit mass and the planar W characteristic function") {
  const TelegraphSpec spec{1.0, 1.0};
  auto g = [&](double rho) { return planar_qfrak_density(spec, rho, 0.0, 1.0); };
  CHECK(std::fabs(hankel(g, 0.0, 18.0) - 1.0) < 1e-5);
  const ModelParams p{0.5, 1.0, 1.0, 1.0, 2};
  for (auto [xi, alpha] : {std::pair{0.5, 0.5}, {0.2, -0.6}}) {
    const double k = std::hypot(xi, alpha);
    const double v[] = {xi, alpha};
    CHECK(std::fabs(hankel(g, k, 18.0) - w_char(p, v, 1.0).value) < 1e-4);
  }
  for (double r : {0.05, 0.8}) {
    CHECK(planar_qfrak_density(spec, r * std::cos(2.0), r * std::sin(2.0), 1.0) == doctest::Approx(g(r)).epsilon(1e-13));
  }
}

TEST_CASE("planar motion at a reflected Brownian time") {
  const TelegraphSpec spec{1.0, 1.0};
  const double t = 1.0;
  const std::size_t n = 100000;
  auto b = sample_planar_TB(spec, t, n, 61);
  std::size_t flagged = 0;
  std::vector<double> radii, angles;
  for (const auto& s : b.samples) {
    if (s.on_boundary) ++flagged;
    radii.push_back(std::hypot(s.x, s.y));
    angles.push_back(std::atan2(s.y, s.x));
  }
  const double p0 = planar_q_boundary_mass(spec, t);
  CHECK(std::fabs(static_cast<double>(flagged) / n - p0) < 3.0 * std::sqrt(p0 * (1 - p0) / n));
  CHECK(chi_square_uniform_pvalue(angles, -pi, pi, 36) > 0.01);

  // radial CDF: interior part from q plus no-turn draws that end at radius c s
  const double r_max = 8.0;
  const std::size_t m = 1600;
  std::vector<double> grid(m + 1), cdf(m + 1, 0.0);
  auto interior = [&](double rho) { return 2.0 * pi * rho * planar_q_density(spec, rho, 0.0, t); };
  auto arcs = [&](double s) { return std::exp(-spec.lambda * s) * std::exp(-s * s / (4.0 * t)) / std::sqrt(pi * t); };
  for (std::size_t i = 1; i <= m; ++i) {
    grid[i] = r_max * static_cast<double>(i) / m;
    cdf[i] = cdf[i - 1] + quad::tanh_sinh(interior, grid[i - 1], grid[i], 1e-10).value +
             quad::gauss_kronrod(arcs, grid[i - 1] / spec.c, grid[i] / spec.c, 1e-12).value;
  }
  CHECK(cdf.back() == doctest::Approx(1.0).epsilon(1e-6));
  auto F = [&](double r) {
    if (r >= r_max) return 1.0;
    const double pos = r / r_max * m;
    const auto i = static_cast<std::size_t>(pos);
    return cdf[i] + (pos - i) * (cdf[i + 1] - cdf[i]);
  };
  CHECK(ks_one_sample(radii, F, 0.01).pass);
}

TEST_CASE("space-fractional telegraph at a reflected Brownian time") {
  for (double beta : {0.5, 0.75}) {
    for (auto [lam, c] : {std::pair{1.0, 1.0}, {2.0, 0.5}}) {
      const TelegraphSpec spec{lam, c};
      const ModelParams p{0.5, beta, lam, c, 1};
      for (double xi : {0.1, 0.4, 0.9}) {
        if (c * c * std::pow(xi, 2.0 * beta) >= lam * lam) continue;
        const double x[] = {xi};
        CHECK(tb_frac_char(spec, beta, xi, 1.0) == doctest::Approx(w_char(p, x, 1.0).value).epsilon(1e-9));
      }
    }
  }
  // against direct draws of S^{2 beta}(L(t)), in characteristic-function space
  const ModelParams p{0.5, 0.5, 1.0, 1.0, 1};
  auto b = sample_W(p, 1.0, 400000, 71);
  double worst = 0.0;
  for (double xi : {0.1, 0.3, 0.6, 0.9}) {
    const double x[] = {xi};
    auto e = empirical_char(b, x);
    worst = std::max(worst, std::fabs(e.value - tb_frac_char({1.0, 1.0}, 0.5, xi, 1.0)) / e.std_error);
  }
  CHECK(worst < 4.0);
}
