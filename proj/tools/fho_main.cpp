#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "fho/config.hpp"
#include "fho/csv_io.hpp"
#include "fho/errors.hpp"
#include "fho/gauss_form.hpp"
#include "fho/hermite.hpp"
#include "fho/nonlinear.hpp"
#include "fho/norms.hpp"
#include "fho/propagator.hpp"
#include "fho/strichartz.hpp"
#include "fho/subordinator.hpp"

using nlohmann::json;

namespace fho {
namespace {

// u0 specs: "phi:K[,amp=A]", "gaussian:amp=A,width=W[,center=C]",
// "coeffs:file.csv".
SpectralField parse_initial_field(const std::string& spec,
                                  std::shared_ptr<const HermiteBasis> basis) {
  std::size_t colon = spec.find(':');
  if (colon == std::string::npos)
    throw type_error("u0 spec '" + spec + "' needs the form kind:args");
  std::string kind = spec.substr(0, colon), rest = spec.substr(colon + 1);

  auto parse_kv = [&](const std::string& s) {
    std::map<std::string, double> kv;
    std::size_t pos = 0;
    while (pos < s.size()) {
      std::size_t comma = s.find(',', pos);
      std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos
                                                                  : comma - pos);
      std::size_t eq = item.find('=');
      if (eq == std::string::npos)
        throw type_error("u0 spec item '" + item + "' needs key=value");
      try {
        kv[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw type_error("u0 spec value in '" + item + "' is not a number");
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return kv;
  };

  if (kind == "coeffs") return read_spectral_field(rest, std::move(basis));

  if (kind == "phi") {
    double amp = 1.0;
    std::size_t comma = rest.find(',');
    std::string deg = rest.substr(0, comma);
    if (comma != std::string::npos) {
      auto kv = parse_kv(rest.substr(comma + 1));
      if (kv.count("amp")) amp = kv["amp"];
    }
    int k;
    try {
      k = std::stoi(deg);
    } catch (const std::exception&) {
      throw type_error("u0 spec 'phi:" + rest + "': degree is not an integer");
    }
    if (k < 0 || k > basis->max_degree())
      throw precondition_error("u0 degree out of range for the basis");
    SpectralField f(std::move(basis));
    f.coeffs[f.index(k, 0)] = amp;
    return f;
  }

  if (kind == "gaussian") {
    auto kv = parse_kv(rest);
    double amp = kv.count("amp") ? kv["amp"] : 1.0;
    double width = kv.count("width") ? kv["width"] : 1.0;
    double center = kv.count("center") ? kv["center"] : 0.0;
    if (!(width > 0.0)) throw precondition_error("u0 gaussian width must be positive");
    double a = 1.0 / (width * width);
    if (basis->dim() == 1)
      return project(basis, std::function<Complex(double)>([=](double x) {
                       return Complex(amp * std::exp(-0.5 * a * (x - center) * (x - center)));
                     }));
    return project(basis, std::function<Complex(double, double)>([=](double x, double y) {
                     return Complex(amp * std::exp(-0.5 * a * ((x - center) * (x - center) + y * y)));
                   }));
  }

  throw type_error("unknown u0 kind '" + kind + "'");
}

int cmd_propagate(const RunConfig& cfg) {
  int dim = cfg.get_int("dim", 1);
  double beta = cfg.get_double("beta", 1.0);
  double t = cfg.get_double("t", 1.0);
  int max_degree = cfg.get_int("max-degree", 48);
  Route route = route_from_string(cfg.get("route", "spectral"));
  PropagatorSpec spec{beta, t, route};
  spec.validate();

  auto basis = std::make_shared<HermiteBasis>(HermiteBasis::build(dim, max_degree));
  SpectralField u0 = parse_initial_field(cfg.get("u0", "phi:0"), basis);

  json out;
  out["route"] = route_name(route);
  out["beta"] = beta;
  out["t"] = t;
  std::string path = cfg.get("out", "");
  if (route == Route::mehler) {
    MehlerApplicator mehler(basis->grid());
    GridField u = mehler.apply(synthesize(u0), t);
    out["sup"] = lp_norm(u, LebesgueExponent::infinity());
    out["l2"] = lp_norm(u, LebesgueExponent::finite(2.0));
    if (!path.empty()) write_grid_field(u, path);
  } else {
    SpectralField u = route == Route::spectral ? apply_spectral(u0, beta, t)
                                               : apply_subordination(u0, t);
    GridField g = synthesize(u);
    out["sup"] = lp_norm(g, LebesgueExponent::infinity());
    out["l2"] = lp_norm(g, LebesgueExponent::finite(2.0));
    if (!path.empty()) write_spectral_field(u, path);
  }
  if (!path.empty()) out["out"] = path;
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_decay_scan(const RunConfig& cfg) {
  int dim = cfg.get_int("dim", 1);
  double beta = cfg.get_double("beta", 1.0);
  LebesgueExponent p = LebesgueExponent::parse(cfg.get("p", "2"));
  LebesgueExponent q = LebesgueExponent::parse(cfg.get("q", "2"));
  int max_degree = cfg.get_int("max-degree", 48);

  DecayScanResult r = decay_scan(beta, dim, p, q, default_time_grid(), max_degree);
  std::string path = cfg.get("out", "");
  if (!path.empty()) write_decay_scan(r, path);

  json out;
  out["dim"] = dim;
  out["beta"] = beta;
  out["p"] = p.str();
  out["q"] = q.str();
  out["sigma_expected"] = r.sigma_expected;
  out["fitted_small_t_slope"] = r.fitted_small_t_slope;
  out["fitted_large_t_rate"] = r.fitted_large_t_rate;
  out["c_star"] = r.c_star;
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_solve(const RunConfig& cfg) {
  SemilinearProblem prob;
  prob.dim = cfg.get_int("dim", 1);
  prob.beta = cfg.get_double("beta", 1.0);
  prob.gamma = cfg.get_double("gamma", 3.0);
  prob.p = LebesgueExponent::parse(cfg.get("p", "4"));
  if (!(prob.gamma > 1.0))
    throw precondition_error("solve: gamma must be > 1, got " +
                             std::to_string(prob.gamma));
  int max_degree = cfg.get_int("max-degree", 32);
  auto basis =
      std::make_shared<HermiteBasis>(HermiteBasis::build(prob.dim, max_degree));
  prob.u0 = parse_initial_field(cfg.get("u0", "phi:0,amp=0.05"), basis);

  double t_end = cfg.get_double("t-end", 5.0);
  double dt = cfg.get_double("dt", 1e-2);
  SolveTrajectory traj = solve(prob, t_end, dt);

  std::string path = cfg.get("out", "");
  if (!path.empty()) write_trajectory(traj, path);

  json out;
  switch (traj.status) {
    case SolveStatus::completed: out["status"] = "completed"; break;
    case SolveStatus::blew_up: out["status"] = "blew_up"; break;
    case SolveStatus::tolerance_failure: out["status"] = "tolerance_failure"; break;
  }
  if (traj.status == SolveStatus::blew_up) {
    out["t_max_est"] = traj.t_max_est;
    try {
      out["fitted_blowup_exponent"] = blowup_rate_check(traj, prob);
    } catch (const Error&) {
      out["fitted_blowup_exponent"] = nullptr;
    }
  } else {
    out["t_max_est"] = nullptr;
    out["fitted_blowup_exponent"] = nullptr;
  }
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_strichartz(const RunConfig& cfg) {
  int dim = cfg.get_int("dim", 1);
  double beta = cfg.get_double("beta", 1.0);
  LebesgueExponent r = LebesgueExponent::parse(cfg.get("r", "2"));
  double T = cfg.get_double("t-end", 10.0);
  int count = cfg.get_int("count", 5);
  int max_degree = cfg.get_int("max-degree", 48);

  std::vector<AdmissibleTriplet> triplets = admissible_triplets(dim, beta, r, count);
  std::vector<FamilyMember> fam = canonical_family(dim);
  std::vector<FamilyMember> narrow{fam[4]}, narrower{fam[5]};  // eps 0.1, 0.01

  std::string path = cfg.get("out", "");
  std::string csv = "q,p,r,sup_ratio,stable\n";
  json rows = json::array();
  for (const AdmissibleTriplet& tr : triplets) {
    double sup = homogeneous_check(tr, fam, T, 2000, max_degree);
    double a = homogeneous_check(tr, narrow, T, 2000, max_degree);
    double b = homogeneous_check(tr, narrower, T, 2000, max_degree);
    bool stable = std::abs(b - a) <= 0.2 * std::max(a, b);
    csv += tr.q.str() + "," + tr.p.str() + "," + tr.r.str() + "," +
           format_double(sup) + "," + (stable ? "1" : "0") + "\n";
    rows.push_back({{"q", tr.q.str()},
                    {"p", tr.p.str()},
                    {"r", tr.r.str()},
                    {"sup_ratio", sup},
                    {"stable", stable}});
  }
  if (!path.empty()) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot open '" + path + "' for writing");
    os << csv;
  }
  std::cout << json{{"triplets", rows}}.dump() << "\n";
  return 0;
}

int cmd_subcheck(const RunConfig& cfg) {
  double eps = cfg.get_double("eps", 1e-10);
  int nodes = cfg.get_int("nodes", 400);
  std::vector<double> ts;
  if (cfg.has("t"))
    ts.push_back(cfg.get_double("t", 1.0));
  else
    ts = {0.5, 1.0, 2.0};

  double max_err = 0.0, mass_dev = 0.0;
  for (double t : ts) {
    SubordinationRule rule = make_subordination_rule(t, eps, nodes);
    mass_dev = std::max(mass_dev, std::abs(rule.total_mass() - 1.0));
    for (double u : {0.0, 0.5, 1.0, 5.0, 20.0})
      max_err = std::max(max_err,
                         std::abs(rule.laplace(u) - std::exp(-t * std::sqrt(u))));
  }
  json out;
  out["max_abs_error"] = max_err;
  out["mass_deviation"] = mass_dev;
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_selftest(const RunConfig&) {
  struct Entry {
    std::string name;
    bool pass;
    std::string detail;
  };
  std::vector<Entry> report;

  {  // orthonormality and projection roundtrip, d = 1, degrees to 64
    auto basis = std::make_shared<HermiteBasis>(HermiteBasis::build(1, 64));
    const auto& w = basis->quad_weights();
    std::size_t nq = basis->quad_nodes().size();
    double gram_err = 0.0;
    for (int j = 0; j <= 64; ++j)
      for (int k = j; k <= 64; ++k) {
        double s = 0.0;
        const double* hj = basis->hermite_quad(j);
        const double* hk = basis->hermite_quad(k);
        for (std::size_t i = 0; i < nq; ++i) s += w[i] * hj[i] * hk[i];
        gram_err = std::max(gram_err, std::abs(s - (j == k ? 1.0 : 0.0)));
      }
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SpectralField c(basis);
    for (Complex& z : c.coeffs) z = Complex(u(rng), u(rng));
    SpectralField back = project(synthesize(c), basis);
    double rt_err = 0.0;
    for (std::size_t i = 0; i < c.coeffs.size(); ++i)
      rt_err = std::max(rt_err, std::abs(back.coeffs[i] - c.coeffs[i]));
    bool pass = gram_err <= 1e-10 && rt_err <= 1e-10;
    report.push_back({"basis_integrity", pass,
                      "gram_err=" + format_double(gram_err) +
                          " roundtrip_err=" + format_double(rt_err)});
  }

  {  // subordinator Laplace identity
    double max_err = 0.0;
    for (double t : {0.5, 1.0, 2.0}) {
      SubordinationRule rule = make_subordination_rule(t);
      for (double u : {0.0, 0.5, 1.0, 5.0, 20.0})
        max_err = std::max(max_err,
                           std::abs(rule.laplace(u) - std::exp(-t * std::sqrt(u))));
    }
    report.push_back({"subordinator_laplace", max_err <= 1e-8,
                      "max_abs_error=" + format_double(max_err)});
  }

  {  // small-time decay exponent, d=1, beta=1, p=1, q=inf: sigma = 1/2
    DecayScanResult r =
        decay_scan(1.0, 1, LebesgueExponent::finite(1.0),
                   LebesgueExponent::infinity(), default_time_grid());
    bool pass = std::abs(r.fitted_small_t_slope + r.sigma_expected) <=
                0.1 * r.sigma_expected;
    report.push_back({"small_time_decay_exponent", pass,
                      "slope=" + format_double(r.fitted_small_t_slope) +
                          " expected=" + format_double(-r.sigma_expected)});
  }

  bool all = true;
  json rows = json::array();
  for (const Entry& e : report) {
    all = all && e.pass;
    std::cout << (e.pass ? "PASS " : "FAIL ") << e.name << " (" << e.detail << ")\n";
    rows.push_back({{"name", e.name}, {"pass", e.pass}, {"detail", e.detail}});
  }
  std::cout << json{{"all_passed", all}, {"checks", rows}}.dump() << "\n";
  return all ? 0 : 1;
}

int dispatch(const RunConfig& cfg) {
  if (cfg.print_config) {
    std::cout << print_config(cfg) << "\n";
    return 0;
  }
  if (const char* th = std::getenv("FHO_THREADS")) {
    int n = std::atoi(th);
    if (n < 1) throw type_error("FHO_THREADS must be a positive integer");
  }
  if (cfg.subcommand == "propagate") return cmd_propagate(cfg);
  if (cfg.subcommand == "decay-scan") return cmd_decay_scan(cfg);
  if (cfg.subcommand == "solve") return cmd_solve(cfg);
  if (cfg.subcommand == "strichartz") return cmd_strichartz(cfg);
  if (cfg.subcommand == "subcheck") return cmd_subcheck(cfg);
  if (cfg.subcommand == "selftest") return cmd_selftest(cfg);
  throw usage_error("unknown subcommand '" + cfg.subcommand + "'");
}

}  // namespace
}  // namespace fho

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    fho::RunConfig cfg = fho::parse_args(args);
    if (const char* seed = std::getenv("FHO_SEED")) {
      if (cfg.subcommand == "solve" && !cfg.has("seed")) cfg.params["seed"] = seed;
    }
    return fho::dispatch(cfg);
  } catch (const fho::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
