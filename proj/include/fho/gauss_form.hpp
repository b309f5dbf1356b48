#pragma once

#include <array>
#include <vector>

namespace fho {

// Separable Gaussian amp * prod_i exp(-a_i (x_i - mu_i)^2 / 2). The heat
// flow at beta = 1 maps this family to itself in closed form, which is what
// lets decay scans reach times far below any grid resolution.
struct GaussTerm {
  int dim = 1;
  double amp = 1.0;
  std::array<double, 2> mu{0.0, 0.0};
  std::array<double, 2> a{1.0, 1.0};

  double eval(double x) const;
  double eval(double x, double y) const;
};

// Closed-form e^{-tH} of one term: complete the square inside the Mehler
// convolution axis by axis.
GaussTerm mehler_apply(const GaussTerm& g, double t);

// Finite sum of Gaussian terms. Closed under beta = 1 flow; the beta = 1/2
// flow produces one term per subordination node.
struct GaussMix {
  int dim = 1;
  std::vector<GaussTerm> terms;

  double eval(double x) const;
  double eval(double x, double y) const;

  // Sup over R^d: exact when all centers coincide, otherwise a coarse scan
  // over the bounding box refined by coordinate descent.
  double sup() const;

  // L^p norm, 1 <= p < inf. Closed form for a single term; mixtures fall
  // back to trapezoid integration resolved against the narrowest term.
  double lp_norm(double p) const;
};

GaussMix mehler_apply(const GaussMix& f, double t);

// beta = 1/2 via subordination: weighted mixture of mehler_apply(f, s_m).
GaussMix subordinate_apply(const GaussMix& f, double t);

// Hermite coefficients <f, h_k>, k = 0..kmax, for a 1D mix, by fine
// trapezoid quadrature (handles terms far narrower than any basis grid).
std::vector<double> hermite_coeffs_1d(const GaussMix& f, int kmax);

}  // namespace fho
