#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "fho/errors.hpp"
#include "fho/propagator.hpp"

using namespace fho;

namespace {

// Random band-limited field: i.i.d. standard normal real/imag parts on
// every retained coefficient.
SpectralField random_field(const std::shared_ptr<const HermiteBasis>& basis,
                           unsigned seed) {
  SpectralField f(basis);
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (auto& c : f.coeffs) c = Complex(gauss(rng), gauss(rng));
  return f;
}

double grid_sup_diff(const GridField& a, const GridField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

double grid_sup(const GridField& a) {
  double m = 0.0;
  for (const auto& v : a.values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_CASE("route_from_string and names") {
  CHECK(route_from_string("spectral") == Route::spectral);
  CHECK(route_from_string("mehler") == Route::mehler);
  CHECK(route_from_string("subordination") == Route::subordination);
  CHECK_THROWS_AS(route_from_string("fourier"), Error);
  CHECK(std::string(route_name(Route::mehler)) == "mehler");
}

TEST_CASE("spec validation ties kernel routes to their beta") {
  PropagatorSpec s;
  s.route = Route::mehler;
  s.beta = 0.5;
  s.t = 1.0;
  CHECK_THROWS_AS(s.validate(), Error);
  s.beta = 1.0;
  CHECK_NOTHROW(s.validate());
  s.route = Route::subordination;
  CHECK_THROWS_AS(s.validate(), Error);
  s.beta = 0.5;
  CHECK_NOTHROW(s.validate());
  s.t = -0.1;
  CHECK_THROWS_AS(s.validate(), Error);
  s.t = 1.0;
  s.beta = 0.0;
  s.route = Route::spectral;
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("spectral route at t = 0 is the identity") {
  auto basis = std::make_shared<HermiteBasis>(HermiteBasis::build(1, 32));
  SpectralField f = random_field(basis, 7);
  SpectralField g = apply_spectral(f, 1.7, 0.0);
  for (std::size_t k = 0; k < f.coeffs.size(); ++k)
    CHECK(std::abs(g.coeffs[k] - f.coeffs[k]) <= 1e-15);
}

TEST_CASE("spectral route damps eigenfunctions by e^{-t lambda^beta}") {
  auto basis = std::make_shared<HermiteBasis>(HermiteBasis::build(1, 16));
  for (int k : {0, 3, 11}) {
    SpectralField f(basis);
    f.coeffs[f.index(k)] = 1.0;
    for (double beta : {0.5, 1.0, 2.0}) {
      SpectralField g = apply_spectral(f, beta, 0.8);
      double expect = std::exp(-0.8 * std::pow(eigenvalue_of(k, 1), beta));
      CHECK(std::abs(g.coeffs[f.index(k)] - Complex(expect)) <= 1e-14);
    }
  }
}

TEST_CASE("d = 2 spectral multiplier uses total degree") {
  auto basis = std::make_shared<HermiteBasis>(HermiteBasis::build(2, 8));
  SpectralField f(basis);
  f.coeffs[f.index(2, 3)] = 1.0;
  SpectralField g = apply_spectral(f, 1.0, 0.5);
  double expect = std::exp(-0.5 * (2.0 * (2 + 3) + 2));
  CHECK(std::abs(g.coeffs[f.index(2, 3)] - Complex(expect)) <= 1e-14);
}

TEST_CASE("semigroup property of the spectral route") {
  auto basis = std::make_shared<HermiteBasis>(HermiteBasis::build(1, 24));
  SpectralField f = random_field(basis, 11);
  SpectralField once = apply_spectral(f, 0.7, 0.9);
  SpectralField twice = apply_spectral(apply_spectral(f, 0.7, 0.4), 0.7, 0.5);
  for (std::size_t k = 0; k < f.coeffs.size(); ++k)
    CHECK(std::abs(once.coeffs[k] - twice.coeffs[k]) <= 1e-14);
}

TEST_CASE("gaussian transform selfcheck") {
  // The trapezoid transform needs the grid to satisfy the sampling
  // condition half_width <= 1/(2 spacing); L = 10, n = 501 gives
  // spacing 0.04 with aliases 25 apart.
  UniformGrid grid1(1, 10.0, 501);
  CHECK(gaussian_fourier_selfcheck(1.0, grid1) <= 1e-8);
  CHECK(gaussian_fourier_selfcheck(2.0, grid1) <= 1e-8);
  CHECK(gaussian_fourier_selfcheck(0.1, grid1) <= 1e-6);
  UniformGrid grid2(2, 6.0, 241);
  CHECK(gaussian_fourier_selfcheck(1.0, grid2) <= 1e-8);
}

TEST_CASE("mehler calibration constant is essentially 1") {
  MehlerApplicator mehler(HermiteBasis::default_grid(1, 48));
  CHECK(mehler.calibration() == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("mehler route matches the spectral route on band-limited data, d = 1") {
  const int N = 48;
  // Finer than the default grid so the kernel width sqrt(tanh 0.1) stays
  // resolved: spacing 32/480 ~= 0.067 < 0.079.
  auto basis = std::make_shared<HermiteBasis>(
      HermiteBasis::build(1, N, UniformGrid(1, 16.0, 481)));
  MehlerApplicator mehler(basis->grid());
  for (unsigned seed = 1; seed <= 20; ++seed) {
    SpectralField f = random_field(basis, seed);
    GridField fg = synthesize(f);
    for (double t : {0.1, 0.3, 1.0}) {
      GridField via_kernel = mehler.apply(fg, t);
      GridField via_spectral = synthesize(apply_spectral(f, 1.0, t));
      double scale = std::max(1.0, grid_sup(via_spectral));
      CHECK(grid_sup_diff(via_kernel, via_spectral) / scale <= 1e-6);
    }
  }
}

TEST_CASE("mehler route matches the spectral route, d = 2") {
  const int N = 16;
  auto basis = std::make_shared<HermiteBasis>(HermiteBasis::build(2, N));
  MehlerApplicator mehler(basis->grid());
  for (unsigned seed = 1; seed <= 3; ++seed) {
    SpectralField f = random_field(basis, 100 + seed);
    GridField fg = synthesize(f);
    for (double t : {0.2, 1.0}) {
      GridField via_kernel = mehler.apply(fg, t);
      GridField via_spectral = synthesize(apply_spectral(f, 1.0, t));
      double scale = std::max(1.0, grid_sup(via_spectral));
      CHECK(grid_sup_diff(via_kernel, via_spectral) / scale <= 1e-6);
    }
  }
}

TEST_CASE("mehler ground-state decay e^{-t}") {
  auto basis = std::make_shared<HermiteBasis>(HermiteBasis::build(1, 48));
  MehlerApplicator mehler(basis->grid());
  SpectralField f(basis);
  f.coeffs[0] = 1.0;
  GridField fg = synthesize(f);
  GridField out = mehler.apply(fg, 2.0);
  double expect = std::exp(-2.0) * std::pow(M_PI, -0.25);
  CHECK(grid_sup(out) == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("mehler refuses unresolvable small times") {
  // Spacing must resolve the kernel width sqrt(tanh t); the default grid
  // has h = 0.1, so t below ~tanh^{-1}(0.16) is out of reach.
  auto basis = std::make_shared<HermiteBasis>(HermiteBasis::build(1, 8));
  MehlerApplicator mehler(basis->grid());
  GridField fg = synthesize(random_field(basis, 3));
  CHECK_THROWS_AS(mehler.apply(fg, 1e-4), Error);
}

TEST_CASE("subordination route matches the spectral route at beta = 1/2") {
  const int N = 48;
  auto basis = std::make_shared<HermiteBasis>(HermiteBasis::build(1, N));
  for (unsigned seed = 1; seed <= 20; ++seed) {
    SpectralField f = random_field(basis, 200 + seed);
    for (double t : {0.25, 1.0, 4.0}) {
      SpectralField via_sub = apply_subordination(f, t);
      SpectralField via_spec = apply_spectral(f, 0.5, t);
      double err = 0.0;
      for (std::size_t k = 0; k < f.coeffs.size(); ++k)
        err = std::max(err, std::abs(via_sub.coeffs[k] - via_spec.coeffs[k]));
      CHECK(err <= 1e-4);
    }
  }
}

TEST_CASE("subordination rule Laplace transform reproduces e^{-t sqrt(u)}") {
  for (double t : {0.5, 1.0, 2.0}) {
    SubordinationRule rule = make_subordination_rule(t);
    CHECK(rule.total_mass() == doctest::Approx(1.0).epsilon(1e-9));
    for (double u : {0.5, 1.0, 5.0, 20.0}) {
      CHECK(std::abs(rule.laplace(u) - std::exp(-t * std::sqrt(u))) <= 1e-8);
    }
  }
}
