#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "fho/errors.hpp"
#include "fho/nonlinear.hpp"
#include "fho/propagator.hpp"

using namespace fho;

namespace {

std::shared_ptr<const HermiteBasis> basis16() {
  static auto b = std::make_shared<HermiteBasis>(HermiteBasis::build(1, 16));
  return b;
}

SpectralField scaled_phi0(double amp) {
  SpectralField f(basis16());
  f.coeffs[0] = amp;
  return f;
}

double max_coeff_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.coeffs.size(); ++k)
    m = std::max(m, std::abs(a.coeffs[k] - b.coeffs[k]));
  return m;
}

}  // namespace

TEST_CASE("critical_exponent") {
  CHECK(critical_exponent(1, 3.0, 1.0) == doctest::Approx(1.0));
  CHECK(critical_exponent(2, 2.0, 0.5) == doctest::Approx(2.0));
  CHECK(critical_exponent(1, 5.0, 2.0) == doctest::Approx(1.0));
}

TEST_CASE("problem validation") {
  SemilinearProblem prob;
  prob.u0 = scaled_phi0(0.1);
  CHECK_NOTHROW(prob.validate());
  prob.gamma = 1.0;
  CHECK_THROWS_AS(prob.validate(), Error);
  prob.gamma = 0.5;
  CHECK_THROWS_AS(prob.validate(), Error);
  prob.gamma = 3.0;
  prob.beta = 0.0;
  CHECK_THROWS_AS(prob.validate(), Error);
}

TEST_CASE("zero data is a fixed point") {
  SemilinearProblem prob;
  prob.u0 = scaled_phi0(0.0);
  auto [next, factor] = duhamel_step(prob.u0, prob, 0.01);
  for (const auto& c : next.coeffs) CHECK(std::abs(c) == 0.0);
  CHECK(factor == 0.0);
  SolveTrajectory traj = solve(prob, 1.0, 0.05);
  CHECK(traj.status == SolveStatus::completed);
  for (double n : traj.lp_norms) CHECK(n == 0.0);
}

TEST_CASE("nonlinearity off reduces one step to the linear multiplier") {
  SemilinearProblem prob;
  prob.nonlinearity_enabled = false;
  prob.beta = 0.7;
  SpectralField u(basis16());
  std::mt19937 rng(5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (auto& c : u.coeffs) c = Complex(gauss(rng), gauss(rng));
  prob.u0 = u;
  auto [next, factor] = duhamel_step(u, prob, 0.01);
  SpectralField lin = apply_spectral(u, 0.7, 0.01);
  CHECK(max_coeff_diff(next, lin) <= 1e-12);
  CHECK(factor == 0.0);
}

TEST_CASE("nonlinearity off marches the exact linear flow over many steps") {
  SemilinearProblem prob;
  prob.nonlinearity_enabled = false;
  prob.u0 = scaled_phi0(1.0);
  SolveTrajectory traj = solve(prob, 2.0, 0.01);
  CHECK(traj.status == SolveStatus::completed);
  // ||e^{-tH} Phi_0||_2 = e^{-t}; the march is exact per step for the
  // linear part, so only norm quadrature error remains.
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    CHECK(traj.lp_norms[i] ==
          doctest::Approx(std::exp(-traj.times[i])).epsilon(1e-6));
}

TEST_CASE("small data contracts strongly") {
  SemilinearProblem prob;
  prob.u0 = scaled_phi0(0.01);
  auto [next, factor] = duhamel_step(prob.u0, prob, 1e-3);
  CHECK(factor < 0.05);
  CHECK(factor >= 0.0);
}

TEST_CASE("discrete step is Lipschitz in the data for small dt") {
  SemilinearProblem prob;
  std::mt19937 rng(17);
  std::normal_distribution<double> gauss(0.0, 0.05);
  SpectralField u(basis16()), v(basis16());
  for (std::size_t k = 0; k < u.coeffs.size(); ++k) {
    u.coeffs[k] = Complex(gauss(rng), gauss(rng));
    v.coeffs[k] = u.coeffs[k] + Complex(gauss(rng), gauss(rng)) * 0.1;
  }
  prob.u0 = u;
  double dt = 1e-3;
  auto [fu, cu] = duhamel_step(u, prob, dt);
  auto [fv, cv] = duhamel_step(v, prob, dt);
  // Output separation tracks input separation up to O(dt) amplification.
  CHECK(max_coeff_diff(fu, fv) <= 1.1 * max_coeff_diff(u, v));
}

TEST_CASE("small data runs globally with bounded norm") {
  SemilinearProblem prob;
  prob.u0 = scaled_phi0(0.01);
  SolveTrajectory traj = solve(prob, 3.0, 0.01);
  CHECK(traj.status == SolveStatus::completed);
  CHECK(traj.times.back() == doctest::Approx(3.0).epsilon(1e-9));
  for (double n : traj.lp_norms) CHECK(n <= 0.011);
  // Decay should win: final norm below e^{-0.9 t} of the start.
  CHECK(traj.lp_norms.back() <= 0.01 * std::exp(-0.9 * 3.0));
}

TEST_CASE("large data blows up in finite time with a time estimate") {
  SemilinearProblem prob;
  prob.p = LebesgueExponent::finite(4.0);
  prob.u0 = scaled_phi0(5.0);
  SolveTrajectory traj = solve(prob, 5.0, 1e-3);
  CHECK(traj.status == SolveStatus::blew_up);
  CHECK(traj.t_max_est > 0.0);
  CHECK(traj.t_max_est < 1.0);
  CHECK(traj.lp_norms.back() > traj.lp_norms.front());
  double slope = blowup_rate_check(traj, prob);
  // log ||u||_p against log(T - t): negative slope, i.e. growth toward T.
  CHECK(slope < 0.0);
}

TEST_CASE("blowup_rate_check needs a resolved final decade") {
  SemilinearProblem prob;
  prob.u0 = scaled_phi0(0.01);
  SolveTrajectory traj = solve(prob, 0.5, 0.05);
  // A completed run has no blow-up time to fit against.
  CHECK_THROWS_AS(blowup_rate_check(traj, prob), Error);
}

TEST_CASE("global run rejects r outside the admissible window") {
  SemilinearProblem prob;
  prob.u0 = scaled_phi0(0.001);
  // gamma = 3, beta = 1, d = 1: need 1/3 < 1/r < 1, i.e. 1 < r < 3.
  CHECK_THROWS_AS(global_smalldata_run(prob, 4.0, 1.0, 0.01), Error);
  CHECK_THROWS_AS(global_smalldata_run(prob, 1.0, 1.0, 0.01), Error);
}

TEST_CASE("global small-data run satisfies the weighted bound") {
  SemilinearProblem prob;
  prob.u0 = scaled_phi0(0.001);
  GlobalRunResult res = global_smalldata_run(prob, 2.0, 3.0, 0.01);
  CHECK(res.traj.status == SolveStatus::completed);
  CHECK(res.delta == doctest::Approx(0.25));
  CHECK(res.rho > 0.0);
  CHECK(res.sup_weighted <= res.bound);
  CHECK(res.passed);
}
