#include "fractel/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fractel/errors.hpp"
#include "fractel/quadrature.hpp"

namespace fractel::suites {

namespace {

constexpr double pi = std::numbers::pi;

CheckResult at_most(std::string name, double value, double tolerance) {
  return {std::move(name), value, tolerance, value <= tolerance};
}

std::string label(const char* base, double v) {
  std::ostringstream os;
  os << base << v;
  return os.str();
}

// Interior mass inside the disc of radius ct through s = sqrt(c^2 t^2 - rho^2).
template <class Pdf>
double disc_mass(Pdf pdf, double ct) {
  auto f = [&](double s) {
    const double rho = std::sqrt((ct - s) * (ct + s));
    return 2.0 * pi * s * pdf(rho);
  };
  return quad::tanh_sinh(f, 0.0, ct, 1e-13).value;
}

// int 2 pi rho J0(k rho) g(rho) d rho
template <class G>
double hankel(G g, double k, double r_max) {
  auto f = [&](double rho) { return 2.0 * pi * rho * std::cyl_bessel_j(0.0, k * rho) * g(rho); };
  return quad::tanh_sinh(f, 0.0, r_max, 1e-11).value;
}

}  // namespace

std::vector<CheckResult> roletelegraph(const TelegraphSpec& spec, double t, std::size_t count,
                                       std::uint64_t seed, double alpha) {
  const ModelParams params{0.5, 1.0, spec.lambda, spec.c, 1};
  auto w = sample_W(params, t, count, seed);
  auto tb = sample_TB(spec, t, count, seed + 1);
  const KSReport ks = ks_two_sample(w, tb, alpha);
  return {{"ks_statistic", ks.statistic, ks.critical, ks.pass}};
}

std::vector<CheckResult> airy_onethird(double lambda, double t, std::span<const double> gammas) {
  const CompositeSpec spec{1.0 / 3.0, lambda};
  auto integral = [&](double gamma) {
    auto f = [&](double x) { return std::exp(-gamma * x) * inverse_density(spec, x, t); };
    return quad::tanh_sinh(f, 0.0, t, 1e-10).value + quad::half_line(f, t, 1e-10).value;
  };
  std::vector<CheckResult> out;
  out.push_back(at_most("mass_error", std::fabs(integral(0.0) - 1.0), 1e-4));
  for (double g : gammas) {
    const double gamma = g * lambda * lambda;
    const double err = std::fabs(integral(gamma) - inverse_density_laplace(spec, gamma, t));
    out.push_back(at_most(label("laplace_error_gamma=", gamma), err, 1e-3));
  }
  return out;
}

std::vector<CheckResult> planar_frak(const TelegraphSpec& spec, double t) {
  validate(spec);
  const double lam = spec.lambda, c = spec.c, ct = c * t;
  std::vector<CheckResult> out;

  const double r_mass = disc_mass([&](double rho) { return planar_pdf(spec, rho, t); }, ct);
  out.push_back(at_most("r_mass_error", std::fabs(r_mass + std::exp(-lam * t) - 1.0), 1e-5));
  const double rf_mass = disc_mass([&](double rho) { return planar_frak_pdf(spec, rho, t); }, ct);
  out.push_back(at_most("rfrak_mass_error", std::fabs(rf_mass - (1.0 - std::exp(-2.0 * lam * t))), 1e-5));

  double mix = 0.0, mix_frak = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double rho = 0.1 * i * ct;
    const double r = planar_pdf(spec, rho, t), rf = planar_frak_pdf(spec, rho, t);
    mix = std::max(mix, std::fabs(planar_pdf_mixture(spec, rho, t, 60) - r) / std::max(1.0, r));
    mix_frak = std::max(mix_frak, std::fabs(planar_frak_pdf_mixture(spec, rho, t, 60) - rf) / std::max(1.0, rf));
  }
  out.push_back(at_most("r_mixture_error", mix, 1e-8));
  out.push_back(at_most("rfrak_mixture_error", mix_frak, 1e-8));

  auto q = [&](double rho) { return planar_qfrak_density(spec, rho, 0.0, t); };
  const double r_max = 18.0 * c * std::sqrt(t);
  out.push_back(at_most("qfrak_mass_error", std::fabs(hankel(q, 0.0, r_max) - 1.0), 1e-5));
  const ModelParams params{0.5, 1.0, lam, c, 2};
  for (auto [a, b] : {std::pair{0.5, 0.5}, {0.2, -0.6}}) {
    const double xi[] = {a * lam / c, b * lam / c};
    const double k = std::hypot(xi[0], xi[1]);
    const double err = std::fabs(hankel(q, k, r_max) - w_char(params, xi, t).value);
    std::ostringstream name;
    name << "qfrak_fourier_error_xi=(" << xi[0] << ";" << xi[1] << ")";
    out.push_back(at_most(name.str(), err, 1e-4));
  }
  return out;
}

std::vector<CheckResult> frac_ode(const ModelParams& params, std::span<const double> xi, double t_max,
                                  std::size_t intervals, int refinements) {
  validate(params);
  double norm2 = 0.0;
  for (double x : xi) norm2 += x * x;
  const double coeff = params.c * params.c * std::pow(norm2, params.beta);
  std::vector<CheckResult> out;
  double prev = 0.0;
  for (int k = 0; k <= refinements; ++k) {
    const std::size_t n = intervals << k;
    auto f = sample_uniform([&](double s) { return w_char(params, xi, s).value; }, 0.0, t_max, n);
    const double res = frac_ode_residual(params.nu, params.lambda, coeff, f, 0.25 * t_max);
    out.push_back({label("residual_n=", static_cast<double>(n)), res, INFINITY, std::isfinite(res)});
    if (k > 0) {
      // value is the reduction factor; it must reach the tolerance
      const double ratio = prev / res;
      out.push_back({label("reduction_n=", static_cast<double>(n)), ratio, 2.0, ratio >= 2.0});
    }
    prev = res;
  }
  return out;
}

bool all_pass(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

}  // namespace fractel::suites
