#pragma once

#include <vector>

namespace fho {

// Density of the 1/2-stable subordinator at time t:
//   eta_t(s) = t / (2 sqrt(pi)) s^{-3/2} exp(-t^2 / 4s),  s > 0,
// the unique closed-form case; its Laplace transform is exp(-t sqrt(u)).
struct SubordinatorDensity {
  double t;

  explicit SubordinatorDensity(double t_);
  double operator()(double s) const;
  double beta() const { return 0.5; }
};

// Log-spaced quadrature for integrals against eta_t. Node k carries the
// combined weight w_k ~ eta_t(s_k) s_k dtau so that
//   integral_0^inf g(s) eta_t(s) ds  ~=  sum_k w_k g(s_k).
struct SubordinationRule {
  double t;
  std::vector<double> nodes;
  std::vector<double> weights;

  // sum of weights; equals 1 up to the tail cutoff when converged
  double total_mass() const;
  // sum_k w_k exp(-u s_k), the discrete Laplace transform
  double laplace(double u) const;
};

// eps bounds both the truncated tail mass and the node spacing budget.
SubordinationRule make_subordination_rule(double t, double eps = 1e-10,
                                          int num_nodes = 400);

}  // namespace fho
