// Command-line runner: sampling, density tabulation, characteristic
// functions and the verification suites, all written as CSV.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fractel/compose.hpp"
#include "fractel/errors.hpp"
#include "fractel/stable.hpp"
#include "fractel/subord.hpp"
#include "fractel/suites.hpp"
#include "fractel/telegraph.hpp"

using namespace fractel;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string kind;
  std::string suite;
  std::string out = "-";
  std::string svg;
  std::string grid;
  std::string xi = "0";
  double nu = 0.5;
  double beta = 1.0;
  double lambda = 1.0;
  double c = 1.0;
  double t = 1.0;
  double ds = 0.0;
  int n = 1;
  std::size_t count = 10000;
  std::size_t intervals = 200;
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool n_given = false;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size() && item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("cannot parse ") + what + ": '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError(std::string("empty ") + what);
  return out;
}

struct Grid {
  double lo, hi;
  std::size_t steps;
};

Grid parse_grid(const std::string& text) {
  const auto v = parse_list(text, "--grid");
  if (v.size() != 3 || !(v[1] > v[0]) || v[2] < 1 || v[2] != std::floor(v[2]))
    throw UsageError("--grid expects min,max,steps with max > min and integer steps >= 1");
  return {v[0], v[1], static_cast<std::size_t>(v[2])};
}

// Output sink: a file or stdout, plus the comment line with the run parameters.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot open output file " + path);
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string describe(const std::string& command, const Options& o) {
  std::ostringstream os;
  os << "# fractel " << command;
  if (!o.kind.empty()) os << " kind=" << o.kind;
  if (!o.suite.empty()) os << " suite=" << o.suite;
  os << " nu=" << fmt(o.nu) << " beta=" << fmt(o.beta) << " lambda=" << fmt(o.lambda) << " c=" << fmt(o.c)
     << " t=" << fmt(o.t) << " n=" << o.n << " count=" << o.count << " seed=" << o.seed;
  if (o.ds > 0.0) os << " ds=" << fmt(o.ds);
  if (!o.grid.empty()) os << " grid=" << o.grid;
  os << " xi=" << o.xi;
  return os.str();
}

void require_seed(const Options& o) {
  if (!o.seed_given) throw UsageError("--seed is required for sampling");
}

TelegraphSpec telegraph_spec(const Options& o) {
  TelegraphSpec s{o.lambda, o.c};
  validate(s);
  return s;
}

ModelParams model(const Options& o) {
  ModelParams p{o.nu, o.beta, o.lambda, o.c, o.n};
  validate(p);
  return p;
}

int run_sample(const Options& o) {
  require_seed(o);
  if (o.count == 0) throw UsageError("--count must be positive");
  Sink sink(o.out);
  auto& os = sink.os();
  os << describe("sample", o) << "\n";
  InverseOptions inv;
  inv.ds = o.ds;

  auto write_batch = [&](const SampleBatch& b) {
    for (std::size_t j = 0; j < b.dim; ++j) os << (j ? "," : "") << "x" << j + 1;
    os << "\n";
    for (std::size_t i = 0; i < b.count(); ++i) {
      for (std::size_t j = 0; j < b.dim; ++j) os << (j ? "," : "") << fmt(b.at(i, j));
      os << "\n";
    }
  };
  auto write_planar = [&](const PlanarBatch& b, bool defect_flag) {
    os << "x1,x2,flag\n";
    for (const auto& s : b.samples)
      os << fmt(s.x) << "," << fmt(s.y) << "," << ((defect_flag ? s.defect : s.on_boundary) ? 1 : 0) << "\n";
  };

  const std::string& k = o.kind;
  if (k == "subordinator") {
    write_batch(sample_subordinator({o.nu, o.t}, o.count, o.seed));
  } else if (k == "stable") {
    write_batch(sample_isotropic_stable({o.beta, o.n, o.t}, o.count, o.seed));
  } else if (k == "inverse") {
    write_batch(sample_inverse({o.nu, o.lambda}, o.t, o.count, o.seed, inv));
  } else if (k == "telegraph") {
    write_batch(sample_telegraph(telegraph_spec(o), o.t, o.count, o.seed));
  } else if (k == "planar") {
    write_planar(sample_planar(telegraph_spec(o), o.t, o.count, o.seed), false);
  } else if (k == "planar-odd") {
    write_planar(sample_planar_odd(telegraph_spec(o), o.t, o.count, o.seed), true);
  } else if (k == "W") {
    write_batch(sample_W(model(o), o.t, o.count, o.seed, inv));
  } else if (k == "TB") {
    write_batch(sample_TB(telegraph_spec(o), o.t, o.count, o.seed));
  } else if (k == "planar-TB") {
    write_planar(sample_planar_TB(telegraph_spec(o), o.t, o.count, o.seed), false);
  } else {
    throw UsageError("unknown sample kind '" + k + "'");
  }
  return exit_ok;
}

void write_svg(const std::string& path, const std::vector<double>& x, const std::vector<double>& y) {
  std::ofstream svg(path);
  if (!svg) throw UsageError("cannot open svg file " + path);
  double ymax = 0.0;
  for (double v : y)
    if (std::isfinite(v)) ymax = std::max(ymax, v);
  if (ymax <= 0.0) ymax = 1.0;
  const double w = 640, h = 400, pad = 20;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  svg << "<polyline fill=\"none\" stroke=\"black\" points=\"";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(y[i])) continue;
    const double px = pad + (w - 2 * pad) * (x[i] - x.front()) / (x.back() - x.front());
    const double py = h - pad - (h - 2 * pad) * y[i] / ymax;
    svg << fmt(px) << "," << fmt(py) << " ";
  }
  svg << "\"/>\n</svg>\n";
}

int run_density(const Options& o) {
  const std::string& k = o.kind;
  const bool planar = k == "planar" || k == "planar-frak" || k == "q" || k == "qfrak";
  Grid g{};
  if (!o.grid.empty()) {
    g = parse_grid(o.grid);
  } else {
    const double reach = planar || k == "telegraph" ? o.c * o.t : o.t;
    g = k == "telegraph" ? Grid{-reach, reach, 400} : Grid{0.0, reach, 400};
  }
  std::function<double(double)> pdf;
  std::vector<std::string> singular;
  const double lam = o.lambda;
  if (k == "lcal") {
    const CompositeSpec s{o.nu, o.lambda};
    validate(s);
    pdf = [=](double x) { return x < 0.0 ? 0.0 : inverse_density(s, x, o.t, DensityRoute::allow_slow); };
  } else if (k == "composite") {
    const CompositeSpec s{o.nu, o.lambda};
    validate(s);
    pdf = [=](double x) { return composite_density(s, x, o.t, DensityRoute::allow_slow); };
  } else if (k == "subordinator") {
    pdf = [=](double x) { return subordinator_density(o.nu, x, o.t, DensityRoute::allow_slow); };
  } else if (k == "inverse-stable") {
    pdf = [=](double x) { return inverse_stable_density(o.nu, x, o.t, DensityRoute::allow_slow); };
  } else if (k == "telegraph") {
    const auto s = telegraph_spec(o);
    pdf = [=](double x) { return telegraph_pdf(s, x, o.t); };
    const double m = 0.5 * std::exp(-lam * o.t);
    singular = {"# atom," + fmt(-o.c * o.t) + "," + fmt(m), "# atom," + fmt(o.c * o.t) + "," + fmt(m)};
  } else if (k == "planar") {
    const auto s = telegraph_spec(o);
    pdf = [=](double x) { return planar_pdf(s, x, o.t); };
    singular = {"# arc," + fmt(o.c * o.t) + "," + fmt(std::exp(-lam * o.t))};
  } else if (k == "planar-frak") {
    const auto s = telegraph_spec(o);
    pdf = [=](double x) { return planar_frak_pdf(s, x, o.t); };
    singular = {"# defect," + fmt(std::exp(-2.0 * lam * o.t))};
  } else if (k == "w1d") {
    const auto s = telegraph_spec(o);
    pdf = [=](double x) { return w_density_1d_half(s, x, o.t); };
  } else if (k == "iterated-bm") {
    pdf = [=](double x) { return iterated_bm_density(x, o.t); };
  } else if (k == "q") {
    const auto s = telegraph_spec(o);
    pdf = [=](double x) { return planar_q_density(s, x, 0.0, o.t); };
  } else if (k == "qfrak") {
    const auto s = telegraph_spec(o);
    pdf = [=](double x) { return planar_qfrak_density(s, x, 0.0, o.t); };
  } else {
    throw UsageError("unknown density kind '" + k + "'");
  }
  if (!(o.t > 0.0)) throw UsageError("--t must be positive");

  std::vector<double> xs(g.steps + 1), ys(g.steps + 1);
  for (std::size_t i = 0; i <= g.steps; ++i) {
    xs[i] = i == g.steps ? g.hi : g.lo + (g.hi - g.lo) * static_cast<double>(i) / static_cast<double>(g.steps);
    ys[i] = pdf(xs[i]);
  }
  Sink sink(o.out);
  auto& os = sink.os();
  os << describe("density", o) << "\n";
  for (const auto& line : singular) os << line << "\n";
  // planar laws are tabulated along the x axis
  os << (planar ? "x,y,pdf\n" : "x,pdf\n");
  for (std::size_t i = 0; i <= g.steps; ++i) os << fmt(xs[i]) << (planar ? ",0," : ",") << fmt(ys[i]) << "\n";
  if (!o.svg.empty()) write_svg(o.svg, xs, ys);
  return exit_ok;
}

int run_char(const Options& o) {
  const auto xi = parse_list(o.xi, "--xi");
  const std::string k = o.kind.empty() ? "W" : o.kind;
  Options adj = o;
  adj.kind = k;
  if (k == "W" && !o.n_given) adj.n = static_cast<int>(xi.size());
  std::vector<double> values;
  if (k == "W") {
    values.push_back(w_char(model(adj), xi, o.t).value);
  } else if (k == "telegraph" || k == "telegraph-frac" || k == "TB-frac") {
    const auto s = telegraph_spec(o);
    for (double v : xi)
      values.push_back(k == "telegraph"        ? telegraph_char(s, v, o.t)
                       : k == "telegraph-frac" ? telegraph_frac_char(s, o.beta, v, o.t)
                                               : tb_frac_char(s, o.beta, v, o.t));
  } else {
    throw UsageError("unknown char kind '" + k + "'");
  }
  Sink sink(o.out);
  auto& os = sink.os();
  os << describe("char", adj) << "\n";
  if (k == "W") {
    for (std::size_t j = 0; j < xi.size(); ++j) os << "xi" << j + 1 << ",";
    os << "t,value\n";
    for (double v : xi) os << fmt(v) << ",";
    os << fmt(o.t) << "," << fmt(values[0]) << "\n";
  } else {
    os << "xi,t,value\n";
    for (std::size_t j = 0; j < xi.size(); ++j) os << fmt(xi[j]) << "," << fmt(o.t) << "," << fmt(values[j]) << "\n";
  }
  return exit_ok;
}

std::vector<CheckResult> run_suite(const std::string& suite, const Options& o) {
  if (suite == "roletelegraph") {
    require_seed(o);
    const std::size_t draws = o.n_given ? static_cast<std::size_t>(o.n) : o.count;
    if (draws == 0) throw UsageError("need a positive number of draws");
    return suites::roletelegraph(telegraph_spec(o), o.t, draws, o.seed);
  }
  if (suite == "airy-onethird") {
    const double gammas[] = {0.25, 0.5, 0.9};
    return suites::airy_onethird(o.lambda, o.t, gammas);
  }
  if (suite == "planar-frak") return suites::planar_frak(telegraph_spec(o), o.t);
  if (suite == "frac-ode") {
    const auto xi = parse_list(o.xi, "--xi");
    Options adj = o;
    adj.n = static_cast<int>(xi.size());
    return suites::frac_ode(model(adj), xi, o.t, o.intervals, 3);
  }
  throw UsageError("unknown suite '" + suite + "'");
}

void write_checks(std::ostream& os, const std::vector<CheckResult>& checks, const std::string& prefix) {
  for (const auto& c : checks)
    os << prefix << c.name << "," << fmt(c.value) << "," << fmt(c.tolerance) << "," << (c.pass ? "true" : "false")
       << "\n";
}

int run_verify(const Options& o) {
  if (o.suite.empty()) throw UsageError("verify needs a suite name");
  const auto checks = run_suite(o.suite, o);
  Sink sink(o.out);
  auto& os = sink.os();
  os << describe("verify", o) << "\n";
  os << "check_name,value,tolerance,pass\n";
  write_checks(os, checks, "");
  return suites::all_pass(checks) ? exit_ok : exit_check_failed;
}

int run_report(const Options& o) {
  Options base = o;
  if (!base.seed_given) {
    base.seed = 1;
    base.seed_given = true;
  }
  Sink sink(o.out);
  auto& os = sink.os();
  os << describe("report", base) << "\n";
  os << "check_name,value,tolerance,pass\n";
  bool ok = true;
  for (const char* suite : {"roletelegraph", "airy-onethird", "planar-frak", "frac-ode"}) {
    Options s = base;
    if (std::string(suite) == "roletelegraph" && !o.n_given && o.count < 100000) s.count = 100000;
    if (std::string(suite) == "frac-ode" && o.xi == "0") s.xi = "0.5";
    if (std::string(suite) == "airy-onethird") s.nu = 1.0 / 3.0;
    const auto checks = run_suite(suite, s);
    write_checks(os, checks, std::string(suite) + "/");
    ok = ok && suites::all_pass(checks);
  }
  return ok ? exit_ok : exit_check_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractel: fractional telegraph processes, their compositions and identity checks"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value configuration file; flags override it");

  Options o;
  app.add_option("--nu", o.nu, "order of the inverse subordinator");
  app.add_option("--beta", o.beta, "space-fractional order");
  app.add_option("--lambda", o.lambda, "Poisson rate");
  app.add_option("--c", o.c, "speed");
  app.add_option("--t", o.t, "time (maximum time for frac-ode)");
  auto* n_opt = app.add_option("--n", o.n, "dimension; number of draws for roletelegraph");
  app.add_option("--count", o.count, "number of draws");
  auto* seed_opt = app.add_option("--seed", o.seed, "random seed");
  app.add_option("--ds", o.ds, "path step of the inverse sampler (0 means t/2048)");
  app.add_option("--grid", o.grid, "min,max,steps");
  app.add_option("--xi", o.xi, "frequency, comma separated for vectors");
  app.add_option("--intervals", o.intervals, "coarsest grid of the frac-ode suite");
  app.add_option("--out", o.out, "output CSV path, - for stdout");
  app.add_option("--svg", o.svg, "optional SVG rendering of a density");

  auto* sample = app.add_subcommand("sample", "draw samples");
  sample->add_option("--kind", o.kind, "subordinator|stable|inverse|telegraph|planar|planar-odd|W|TB|planar-TB")
      ->required();
  auto* density = app.add_subcommand("density", "tabulate a density");
  density->add_option("--kind", o.kind,
                      "lcal|composite|subordinator|inverse-stable|telegraph|planar|planar-frak|w1d|iterated-bm|q|qfrak")
      ->required();
  auto* chr = app.add_subcommand("char", "evaluate a characteristic function");
  chr->add_option("--kind", o.kind, "W|telegraph|telegraph-frac|TB-frac");
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", o.suite, "roletelegraph|airy-onethird|planar-frak|frac-ode")->required();
  auto* report = app.add_subcommand("report", "run every suite with its defaults");
  for (auto* sub : {sample, density, chr, verify, report}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return e.get_exit_code() == 0 ? app.exit(e) : (app.exit(e), exit_usage);
  }
  o.seed_given = seed_opt->count() > 0;
  o.n_given = n_opt->count() > 0;

  try {
    if (*sample) return run_sample(o);
    if (*density) return run_density(o);
    if (*chr) return run_char(o);
    if (*verify) return run_verify(o);
    if (*report) return run_report(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const DomainError& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return exit_usage;
  } catch (const BranchError& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return exit_usage;
  } catch (const UnsupportedOrderError& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_check_failed;
  }
  return exit_usage;
}
