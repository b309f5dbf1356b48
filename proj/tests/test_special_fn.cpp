#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fho/errors.hpp"
#include "fho/special_fn.hpp"

using namespace fho;

TEST_CASE("K_{1/2} closed form sqrt(pi/2z) e^{-z}") {
  for (double z : {1e-3, 0.1, 0.5, 1.0, 3.0, 10.0, 50.0}) {
    double oracle = std::sqrt(M_PI / (2.0 * z)) * std::exp(-z);
    CHECK(macdonald_k(0.5, z) == doctest::Approx(oracle).epsilon(1e-10));
  }
}

TEST_CASE("K_{3/2} and K_{5/2} closed forms") {
  // K_{3/2}(z) = sqrt(pi/2z) e^{-z} (1 + 1/z)
  // K_{5/2}(z) = sqrt(pi/2z) e^{-z} (1 + 3/z + 3/z^2)
  for (double z : {0.2, 1.0, 4.0, 20.0}) {
    double base = std::sqrt(M_PI / (2.0 * z)) * std::exp(-z);
    CHECK(macdonald_k(1.5, z) ==
          doctest::Approx(base * (1.0 + 1.0 / z)).epsilon(1e-9));
    CHECK(macdonald_k(2.5, z) ==
          doctest::Approx(base * (1.0 + 3.0 / z + 3.0 / (z * z))).epsilon(1e-9));
  }
}

TEST_CASE("symmetry K_nu = K_{-nu}") {
  for (double nu : {0.25, 0.5, 1.0, 2.5, 7.0, 15.0}) {
    for (double z : {0.05, 0.7, 3.0, 40.0}) {
      double plus = macdonald_k(nu, z);
      double minus = macdonald_k(-nu, z);
      CHECK(std::abs(plus - minus) <= 1e-8 * std::max(1.0, std::abs(plus)));
    }
  }
}

TEST_CASE("small-argument limit z^nu K_nu(z) -> 2^{nu-1} Gamma(nu)") {
  for (double nu : {0.5, 1.0, 1.5}) {
    double z = 1e-4;
    double limit = std::pow(2.0, nu - 1.0) * std::tgamma(nu);
    double got = std::pow(z, nu) * macdonald_k(nu, z);
    CHECK(got == doctest::Approx(limit).epsilon(1e-3));
  }
}

TEST_CASE("recurrence K_{nu+1} = K_{nu-1} + (2 nu / z) K_nu") {
  for (double nu : {0.7, 1.3, 4.0}) {
    for (double z : {0.5, 2.0, 9.0}) {
      double lhs = macdonald_k(nu + 1.0, z);
      double rhs = macdonald_k(nu - 1.0, z) + (2.0 * nu / z) * macdonald_k(nu, z);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
  }
}

TEST_CASE("known value K_0(1)") {
  // Abramowitz & Stegun 9.8: K_0(1) = 0.4210244382...
  CHECK(macdonald_k(0.0, 1.0) == doctest::Approx(0.42102443824070834).epsilon(1e-9));
  // K_1(1) = 0.6019072301...
  CHECK(macdonald_k(1.0, 1.0) == doctest::Approx(0.60190723019723458).epsilon(1e-9));
}

TEST_CASE("domain limits are enforced") {
  CHECK_THROWS_AS(macdonald_k(20.5, 1.0), Error);
  CHECK_THROWS_AS(macdonald_k(-21.0, 1.0), Error);
  CHECK_THROWS_AS(macdonald_k(1.0, 0.0), Error);
  CHECK_THROWS_AS(macdonald_k(1.0, -2.0), Error);
  CHECK_THROWS_AS(macdonald_k(1.0, 100.5), Error);
  CHECK_NOTHROW(macdonald_k(20.0, 100.0));
}
