#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "fho/errors.hpp"
#include "fho/norms.hpp"
#include "fho/propagator.hpp"

using namespace fho;

namespace {

// ||Phi_0||_p = pi^{-1/4} (2 pi / p)^{1/(2p)} in d = 1.
double phi0_lp(double p) {
  return std::pow(M_PI, -0.25) * std::pow(2.0 * M_PI / p, 0.5 / p);
}

GridField phi0_field(const UniformGrid& grid) {
  GridField f(grid);
  auto xs = grid.axis();
  if (grid.dim == 1) {
    for (int i = 0; i < grid.points_per_axis; ++i)
      f.values[i] = std::pow(M_PI, -0.25) * std::exp(-0.5 * xs[i] * xs[i]);
  } else {
    for (int i = 0; i < grid.points_per_axis; ++i)
      for (int j = 0; j < grid.points_per_axis; ++j)
        f.values[static_cast<std::size_t>(i) * grid.points_per_axis + j] =
            std::pow(M_PI, -0.5) *
            std::exp(-0.5 * (xs[i] * xs[i] + xs[j] * xs[j]));
  }
  return f;
}

}  // namespace

TEST_CASE("LebesgueExponent parse and print") {
  CHECK(LebesgueExponent::parse("2").value == doctest::Approx(2.0));
  CHECK_FALSE(LebesgueExponent::parse("2").inf);
  CHECK(LebesgueExponent::parse("inf").inf);
  CHECK(LebesgueExponent::parse("1.5").reciprocal() == doctest::Approx(2.0 / 3.0));
  CHECK(LebesgueExponent::infinity().reciprocal() == 0.0);
  CHECK(LebesgueExponent::parse("inf").str() == "inf");
  CHECK_THROWS_AS(LebesgueExponent::parse("0.5"), Error);
  CHECK_THROWS_AS(LebesgueExponent::parse("abc"), Error);
}

TEST_CASE("grid lp_norm against ground-state closed forms, d = 1") {
  UniformGrid grid(1, 12.0, 1201);
  GridField f = phi0_field(grid);
  CHECK(lp_norm(f, LebesgueExponent::finite(2.0)) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(lp_norm(f, LebesgueExponent::finite(1.0)) ==
        doctest::Approx(phi0_lp(1.0)).epsilon(1e-8));
  CHECK(lp_norm(f, LebesgueExponent::finite(4.0)) ==
        doctest::Approx(phi0_lp(4.0)).epsilon(1e-8));
  CHECK(lp_norm(f, LebesgueExponent::infinity()) ==
        doctest::Approx(std::pow(M_PI, -0.25)).epsilon(1e-12));
}

TEST_CASE("grid lp_norm, d = 2 tensor ground state") {
  UniformGrid grid(2, 9.0, 361);
  GridField f = phi0_field(grid);
  CHECK(lp_norm(f, LebesgueExponent::finite(2.0)) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(lp_norm(f, LebesgueExponent::finite(1.0)) ==
        doctest::Approx(phi0_lp(1.0) * phi0_lp(1.0)).epsilon(1e-7));
  CHECK(lp_norm(f, LebesgueExponent::infinity()) ==
        doctest::Approx(std::pow(M_PI, -0.5)).epsilon(1e-12));
}

TEST_CASE("sigma_exponent") {
  CHECK(sigma_exponent(1, 1.0, LebesgueExponent::finite(1.0),
                       LebesgueExponent::infinity()) == doctest::Approx(0.5));
  CHECK(sigma_exponent(1, 0.5, LebesgueExponent::finite(1.0),
                       LebesgueExponent::infinity()) == doctest::Approx(1.0));
  CHECK(sigma_exponent(2, 1.0, LebesgueExponent::finite(2.0),
                       LebesgueExponent::infinity()) == doctest::Approx(0.5));
  CHECK(sigma_exponent(1, 1.0, LebesgueExponent::finite(2.0),
                       LebesgueExponent::finite(2.0)) == doctest::Approx(0.0));
}

TEST_CASE("gauss term closed forms") {
  GaussTerm g;  // amp exp(-x^2 / 2)
  g.amp = std::pow(M_PI, -0.25);
  GaussMix mix{1, {g}};
  CHECK(mix.lp_norm(2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mix.lp_norm(1.0) == doctest::Approx(phi0_lp(1.0)).epsilon(1e-12));
  CHECK(mix.sup() == doctest::Approx(std::pow(M_PI, -0.25)).epsilon(1e-12));
}

TEST_CASE("gauss heat flow leaves the ground state shape invariant") {
  GaussTerm g;
  g.amp = std::pow(M_PI, -0.25);
  for (double t : {0.01, 0.5, 3.0}) {
    GaussTerm out = mehler_apply(g, t);
    CHECK(out.a[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(out.mu[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(out.amp == doctest::Approx(g.amp * std::exp(-t)).epsilon(1e-12));
  }
}

TEST_CASE("gauss heat flow matches the spectral route for a generic term") {
  // Narrowish shifted Gaussian, pushed through both the closed-form
  // algebra and a high-degree Hermite expansion.
  GaussTerm g;
  g.amp = 1.0;
  g.a[0] = 4.0;
  g.mu[0] = 0.7;
  GaussMix mix{1, {g}};
  const int N = 120;
  std::vector<double> c = hermite_coeffs_1d(mix, N);
  auto basis = std::make_shared<HermiteBasis>(HermiteBasis::build(1, N));
  SpectralField f(basis);
  for (int k = 0; k <= N; ++k) f.coeffs[k] = c[k];
  for (double t : {0.3, 1.0}) {
    GridField via_spectral = synthesize(apply_spectral(f, 1.0, t));
    GaussMix flowed = mehler_apply(mix, t);
    double err = 0.0;
    auto xs = basis->grid().axis();
    for (int i = 0; i < basis->grid().points_per_axis; ++i)
      err = std::max(err, std::abs(via_spectral.values[i] - flowed.eval(xs[i])));
    CHECK(err <= 1e-8);
  }
}

TEST_CASE("subordinated gauss flow damps the ground state by e^{-t sqrt(d)}") {
  GaussTerm g;
  g.amp = std::pow(M_PI, -0.25);
  GaussMix mix{1, {g}};
  for (double t : {0.5, 2.0}) {
    GaussMix out = subordinate_apply(mix, t);
    // lambda_0 = d = 1, so e^{-t H^{1/2}} Phi_0 = e^{-t} Phi_0.
    CHECK(out.eval(0.0) ==
          doctest::Approx(std::exp(-t) * g.amp).epsilon(1e-8));
    CHECK(out.eval(1.3) ==
          doctest::Approx(std::exp(-t) * g.eval(1.3)).epsilon(1e-8));
  }
}

TEST_CASE("hermite_coeffs_1d recovers pure eigenfunction expansions") {
  GaussTerm g;
  g.amp = std::pow(M_PI, -0.25);
  GaussMix mix{1, {g}};
  std::vector<double> c = hermite_coeffs_1d(mix, 12);
  CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-10));
  for (int k = 1; k <= 12; ++k) CHECK(std::abs(c[k]) <= 1e-10);
}

TEST_CASE("family construction") {
  auto fam = canonical_family(1);
  CHECK(fam.size() >= 6);
  bool has_eigen = false, has_gauss = false, has_band = false;
  for (const auto& m : fam) {
    if (m.kind == MemberKind::eigenfunction) has_eigen = true;
    if (m.kind == MemberKind::gaussian) has_gauss = true;
    if (m.kind == MemberKind::band_limited) has_band = true;
  }
  CHECK(has_eigen);
  CHECK(has_gauss);
  CHECK(has_band);
  CHECK(!concentrating_ladder(1).empty());
}

TEST_CASE("L2 -> L2 operator ratio equals e^{-t d} up to quadrature") {
  auto fam = canonical_family(1);
  for (double t : {0.2, 1.0, 3.0}) {
    double r = operator_ratio(1.0, t, 1, LebesgueExponent::finite(2.0),
                              LebesgueExponent::finite(2.0), fam);
    // Phi_0 attains the bound exactly; nothing may exceed it.
    CHECK(r <= std::exp(-t) + 1e-9);
    CHECK(r >= std::exp(-t) - 1e-6);
  }
}

TEST_CASE("operator ratio decreases in t") {
  auto fam = canonical_family(1);
  FamilyEngine eng(1.0, 1, LebesgueExponent::finite(1.0),
                   LebesgueExponent::infinity(), fam);
  double prev = eng.ratio(0.05);
  for (double t : {0.1, 0.3, 1.0, 3.0, 8.0}) {
    double cur = eng.ratio(t);
    CHECK(cur < prev * (1.0 + 1e-12));
    prev = cur;
  }
}

TEST_CASE("fit_slope recovers exact lines and rejects tiny samples") {
  std::vector<double> xs = {0.0, 1.0, 2.0, 3.0, 4.0};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(3.5 - 0.75 * x);
  CHECK(fit_slope(xs, ys) == doctest::Approx(-0.75).epsilon(1e-12));
  CHECK_THROWS_AS(fit_slope({1.0, 2.0}, {1.0, 2.0}), Error);
}

TEST_CASE("default_time_grid covers both regimes") {
  auto ts = default_time_grid();
  CHECK(ts.front() == doctest::Approx(1e-3));
  CHECK(ts.back() == doctest::Approx(10.0));
  int small = 0, large = 0;
  for (double t : ts) {
    if (t <= 0.1) ++small;
    if (t >= 2.0) ++large;
  }
  CHECK(small >= 20);
  CHECK(large >= 20);
  for (std::size_t i = 1; i < ts.size(); ++i) CHECK(ts[i] > ts[i - 1]);
}

TEST_CASE("decay scan p = q = 2 has flat small-t slope and rate -d") {
  auto res = decay_scan(1.0, 1, LebesgueExponent::finite(2.0),
                        LebesgueExponent::finite(2.0), default_time_grid());
  CHECK(std::abs(res.fitted_small_t_slope) <= 0.05);
  CHECK(res.fitted_large_t_rate == doctest::Approx(-1.0).epsilon(0.05));
  CHECK(res.c_star <= 1.05);
  CHECK(res.c_star >= 0.9);
}

TEST_CASE("c_star is stable under max_degree refinement") {
  auto ts = default_time_grid();
  auto a = decay_scan(1.0, 1, LebesgueExponent::finite(1.0),
                      LebesgueExponent::infinity(), ts, 48);
  auto b = decay_scan(1.0, 1, LebesgueExponent::finite(1.0),
                      LebesgueExponent::infinity(), ts, 64);
  CHECK(std::abs(a.c_star - b.c_star) / b.c_star <= 0.05);
}

TEST_CASE("tanh-normalized rate stays bounded for p = q = 2") {
  auto res = tanh_rate_check(LebesgueExponent::finite(2.0),
                             LebesgueExponent::finite(2.0), 1,
                             default_time_grid());
  // |1/q - 1/p| = 0: the normalization is trivial and the ratio itself
  // must stay below 1.
  CHECK(res.max_value <= 1.0 + 1e-9);
  CHECK(res.min_value > 0.0);
}
