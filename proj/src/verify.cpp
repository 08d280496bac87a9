#include "fractel/verify.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <numbers>

#include "fractel/errors.hpp"
#include "fractel/quadrature.hpp"

namespace fractel {

namespace {

double uniform_step(const GridFunction& f) {
  const auto& g = f.grid;
  if (g.size() != f.values.size()) throw ContractError("grid and values differ in length");
  if (g.size() < 3) throw ContractError("grid needs at least three nodes");
  const double h = (g.back() - g.front()) / static_cast<double>(g.size() - 1);
  if (!(h > 0.0)) throw ContractError("grid must be strictly increasing");
  for (std::size_t i = 1; i < g.size(); ++i)
    if (std::fabs((g[i] - g[i - 1]) - h) > 1e-9 * h) throw ContractError("grid is not uniform");
  return h;
}

void require_origin(const GridFunction& f) {
  if (std::fabs(f.grid.front()) > 1e-14) throw ContractError("time grid must start at t = 0");
}

// Wynn epsilon extrapolation of a sequence of partial sums. Returns the
// even-column entry whose last two values agree best; a vanishing difference
// means the table has converged and ends the recursion.
double wynn_epsilon(const std::vector<double>& s) {
  std::vector<double> prev(s.size() + 1, 0.0), cur(s.begin(), s.end());
  double best = s.back();
  double best_change = s.size() > 1 ? std::fabs(s.back() - s[s.size() - 2]) : INFINITY;
  for (std::size_t k = 1; cur.size() > 2 && k <= 16; ++k) {
    std::vector<double> next(cur.size() - 1);
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const double d = cur[i + 1] - cur[i];
      if (d == 0.0) return best;
      next[i] = prev[i + 1] + 1.0 / d;
    }
    prev = cur;
    cur = next;
    if (k % 2 == 0 && cur.size() > 1) {
      const double change = std::fabs(cur.back() - cur[cur.size() - 2]);
      if (std::isfinite(cur.back()) && change < best_change) {
        best = cur.back();
        best_change = change;
      }
    }
  }
  return best;
}

}  // namespace

GridFunction sample_uniform(const std::function<double(double)>& f, double a, double b,
                            std::size_t intervals) {
  if (intervals < 2 || !(b > a)) throw DomainError("sample_uniform: need b > a and >= 2 intervals");
  GridFunction g;
  g.grid.resize(intervals + 1);
  g.values.resize(intervals + 1);
  const double h = (b - a) / static_cast<double>(intervals);
  for (std::size_t i = 0; i <= intervals; ++i) {
    g.grid[i] = i == intervals ? b : a + h * static_cast<double>(i);
    g.values[i] = f(g.grid[i]);
  }
  return g;
}

GridFunction caputo_derivative(const GridFunction& f, double order) {
  if (!(order > 0.0 && order <= 1.0)) throw DomainError("caputo_derivative: order in (0, 1]");
  const double h = uniform_step(f);
  require_origin(f);
  const std::size_t n = f.grid.size();
  GridFunction out;
  out.grid.assign(f.grid.begin() + 1, f.grid.end());
  out.values.resize(n - 1);
  const auto& v = f.values;
  if (order == 1.0) {
    out.values[0] = (v[1] - v[0]) / h;
    for (std::size_t i = 2; i < n; ++i) out.values[i - 1] = (3.0 * v[i] - 4.0 * v[i - 1] + v[i - 2]) / (2.0 * h);
    return out;
  }
  // L1: h^{-a}/Gamma(2-a) sum_k b_k (f_{n-k} - f_{n-k-1}), b_k = (k+1)^{1-a} - k^{1-a}
  std::vector<double> b(n);
  for (std::size_t k = 0; k < n; ++k)
    b[k] = std::pow(static_cast<double>(k + 1), 1.0 - order) - std::pow(static_cast<double>(k), 1.0 - order);
  std::vector<double> dv(n - 1);
  for (std::size_t i = 1; i < n; ++i) dv[i - 1] = v[i] - v[i - 1];
  const double scale = std::pow(h, -order) / std::tgamma(2.0 - order);
  for (std::size_t m = 1; m < n; ++m) {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += b[k] * dv[m - 1 - k];
    out.values[m - 1] = scale * s;
  }
  return out;
}

GridFunction riemann_liouville_derivative(const GridFunction& f, double order) {
  if (!(order > 0.0 && order < 1.0)) throw DomainError("riemann_liouville_derivative: order in (0, 1)");
  const double h = uniform_step(f);
  require_origin(f);
  const std::size_t n = f.grid.size();
  std::vector<double> g(n);
  g[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) g[k] = g[k - 1] * (1.0 - (order + 1.0) / static_cast<double>(k));
  GridFunction out;
  out.grid.assign(f.grid.begin() + 1, f.grid.end());
  out.values.resize(n - 1);
  const double scale = std::pow(h, -order);
  for (std::size_t m = 1; m < n; ++m) {
    double s = 0.0;
    for (std::size_t k = 0; k <= m; ++k) s += g[k] * f.values[m - k];
    out.values[m - 1] = scale * s;
  }
  return out;
}

double caputo_double_eigen_check(double nu, double r, double t_max, std::size_t intervals,
                                 double t_from) {
  if (!(nu > 0.0 && 2.0 * nu <= 1.0)) throw DomainError("caputo_double_eigen_check: need 0 < 2 nu <= 1");
  auto e = [&](double t) { return t == 0.0 ? 1.0 : mittag_leffler({nu, 1.0}, r * std::pow(t, nu)).value; };
  GridFunction f = sample_uniform(e, 0.0, t_max, intervals);
  GridFunction d = caputo_derivative(f, 2.0 * nu);
  const double g = std::tgamma(1.0 - nu);
  double worst = 0.0;
  for (std::size_t i = 0; i < d.grid.size(); ++i) {
    const double t = d.grid[i];
    if (t < t_from) continue;
    const double ev = f.values[i + 1];
    const double want = r * r * ev + r * std::pow(t, -nu) / g;
    worst = std::max(worst, std::fabs(d.values[i] - want));
  }
  return worst;
}

double frac_ode_residual(double nu, double lam, double coeff, const GridFunction& f,
                         double t_from) {
  if (!(nu > 0.0 && 2.0 * nu <= 1.0)) throw DomainError("frac_ode_residual: need 0 < 2 nu <= 1");
  GridFunction d2 = caputo_derivative(f, 2.0 * nu);
  GridFunction d1 = caputo_derivative(f, nu);
  double worst = 0.0;
  for (std::size_t i = 0; i < d1.grid.size(); ++i) {
    if (d1.grid[i] < t_from) continue;
    const double r = d2.values[i] + 2.0 * lam * d1.values[i] + coeff * f.values[i + 1];
    worst = std::max(worst, std::fabs(r));
  }
  return worst;
}

double riesz_constant(double beta) {
  return 2.0 * beta / (2.0 * std::tgamma(1.0 - 2.0 * beta) * std::cos(beta * std::numbers::pi));
}

GridFunction riesz_singular(const std::function<double(double)>& u, const std::vector<double>& x,
                            double beta) {
  if (!(beta > 0.0 && 2.0 * beta < 1.0)) throw DomainError("riesz_singular: need 0 < 2 beta < 1");
  const double c = riesz_constant(beta);
  const double p = 2.0 * beta;
  // Below z0 the symmetric second difference D(z) = 2u(x) - u(x+z) - u(x-z)
  // is replaced by a z^2 + b z^4 fitted at z0 and z0/2 and integrated exactly;
  // evaluating D there directly would divide rounding noise by z^{1+2 beta}.
  // u must be smooth on the scale z0.
  constexpr double z0 = 0.05;
  GridFunction out{x, std::vector<double>(x.size())};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    const double ux = u(xi);
    auto d = [&](double z) { return 2.0 * ux - u(xi + z) - u(xi - z); };
    const double d1 = d(z0), d2 = d(0.5 * z0);
    const double bz4 = 4.0 / 3.0 * (d1 - 4.0 * d2);
    const double az2 = d1 - bz4;
    const double head = std::pow(z0, -p) * (az2 / (2.0 - p) + bz4 / (4.0 - p));
    // w = log z keeps the algebraic decay smooth
    auto f = [&](double w) {
      const double z = std::exp(w);
      return d(z) * std::pow(z, -p);
    };
    // Beyond z_max only 2u(x) survives; its tail is u(x) z_max^{-2 beta} / beta.
    const double z_max = 64.0 + std::fabs(xi);
    const quad::QuadResult body = quad::gauss_kronrod(f, std::log(z0), std::log(z_max), 1e-12, 25);
    const double tail = ux * std::pow(z_max, -p) / beta;
    out.values[i] = -c * (head + body.value + tail);
  }
  return out;
}

EvalResult numerical_laplace(const std::function<double(double)>& f, double mu, double sup_bound,
                             double tol) {
  if (!(mu > 0.0)) throw DomainError("numerical_laplace: mu must be positive");
  const double t_max = std::max(1.0, std::log(std::max(sup_bound, 1e-300) / (mu * tol)) / mu);
  auto g = [&](double t) { return std::exp(-mu * t) * f(t); };
  quad::QuadResult head = quad::tanh_sinh(g, 0.0, std::min(1.0, t_max), 0.1 * tol);
  quad::QuadResult body{};
  if (t_max > 1.0) body = quad::gauss_kronrod(g, 1.0, t_max, 0.1 * tol);
  const double truncation = sup_bound * std::exp(-mu * t_max) / mu;
  return {head.value + body.value, head.abs_error + body.abs_error + truncation};
}

CharEstimate empirical_char(const SampleBatch& batch, std::span<const double> xi) {
  const std::size_t n = batch.count();
  if (n == 0) throw DomainError("empirical_char: empty batch");
  if (xi.size() != batch.dim) throw DomainError("empirical_char: dim(xi) != batch dim");
  double sc = 0.0, sc2 = 0.0, ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = batch.row(i);
    double phase = 0.0;
    for (std::size_t j = 0; j < xi.size(); ++j) phase += xi[j] * row[j];
    const double c = std::cos(phase);
    sc += c;
    sc2 += c * c;
    ss += std::sin(phase);
  }
  const double mean = sc / n;
  const double var = n > 1 ? std::max(0.0, (sc2 - n * mean * mean) / (n - 1)) : 0.0;
  return {mean, std::sqrt(var / n), ss / n};
}

double ks_critical_constant(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("ks: alpha in (0, 1)");
  return std::sqrt(-0.5 * std::log(alpha / 2.0));
}

KSReport ks_two_sample(std::span<const double> a, std::span<const double> b, double alpha) {
  if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n1 = static_cast<double>(x.size()), n2 = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::fabs(i / n1 - j / n2));
  }
  KSReport r;
  r.statistic = d;
  r.n1 = x.size();
  r.n2 = y.size();
  r.alpha = alpha;
  r.critical = ks_critical_constant(alpha) * std::sqrt((n1 + n2) / (n1 * n2));
  r.pass = d < r.critical;
  return r;
}

KSReport ks_two_sample(const SampleBatch& a, const SampleBatch& b, double alpha) {
  if (a.dim != 1 || b.dim != 1) throw DomainError("ks_two_sample: scalar batches only");
  return ks_two_sample(std::span<const double>(a.values), std::span<const double>(b.values), alpha);
}

KSReport ks_one_sample(std::span<const double> a, const std::function<double(double)>& cdf,
                       double alpha) {
  if (a.empty()) throw DomainError("ks_one_sample: empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double F = cdf(x[i]);
    d = std::max({d, (i + 1) / n - F, F - i / n});
  }
  KSReport r;
  r.statistic = d;
  r.n1 = x.size();
  r.alpha = alpha;
  r.critical = ks_critical_constant(alpha) / std::sqrt(n);
  r.pass = d < r.critical;
  return r;
}

double chi_square_uniform_pvalue(std::span<const double> data, double lo, double hi,
                                 std::size_t bins) {
  if (data.empty() || bins < 2 || !(hi > lo)) throw DomainError("chi_square_uniform: bad input");
  std::vector<double> counts(bins, 0.0);
  for (double v : data) {
    auto k = static_cast<std::size_t>((v - lo) / (hi - lo) * bins);
    counts[std::min(k, bins - 1)] += 1.0;
  }
  const double expected = static_cast<double>(data.size()) / bins;
  double stat = 0.0;
  for (double c : counts) stat += (c - expected) * (c - expected) / expected;
  boost::math::chi_squared_distribution<double> dist(static_cast<double>(bins - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

EvalResult airy_negative_half_line_integral() {
  auto f = [](double y) { return airy_ai(-y).value; };
  std::vector<double> partial;
  double lo = 0.0, sum = 0.0, err = 0.0;
  for (int k = 1; k <= 60; ++k) {
    const double hi = -boost::math::airy_ai_zero<double>(k);
    quad::QuadResult r = quad::gauss_kronrod(f, lo, hi, 1e-14);
    sum += r.value;
    err += r.abs_error;
    partial.push_back(sum);
    lo = hi;
  }
  const double a = wynn_epsilon(partial);
  std::vector<double> shorter(partial.begin(), partial.end() - 2);
  const double b = wynn_epsilon(shorter);
  return {a, err + std::fabs(a - b)};
}

}  // namespace fractel
