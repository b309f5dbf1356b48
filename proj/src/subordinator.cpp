#include "fho/subordinator.hpp"

#include <cmath>
#include <string>

#include "fho/errors.hpp"

namespace fho {

SubordinatorDensity::SubordinatorDensity(double t_) : t(t_) {
  if (!(t > 0.0))
    throw precondition_error("SubordinatorDensity: t must be positive");
}

double SubordinatorDensity::operator()(double s) const {
  if (s <= 0.0) return 0.0;
  return t / (2.0 * std::sqrt(M_PI)) * std::pow(s, -1.5) * std::exp(-t * t / (4.0 * s));
}

double SubordinationRule::total_mass() const {
  double m = 0.0;
  for (double w : weights) m += w;
  return m;
}

double SubordinationRule::laplace(double u) const {
  double m = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k)
    m += weights[k] * std::exp(-u * nodes[k]);
  return m;
}

SubordinationRule make_subordination_rule(double t, double eps, int num_nodes) {
  if (!(t > 0.0))
    throw precondition_error("subordination rule: t must be positive");
  if (num_nodes < 16)
    throw precondition_error("subordination rule: too few nodes");

  SubordinatorDensity eta(t);
  // eta vanishes double-exponentially below t^2/(4 log(1/eps)) and the
  // tail mass above S equals erf(t / (2 sqrt(S))) ~ t / sqrt(pi S).
  double s_min = t * t / (4.0 * std::log(1.0 / eps));
  double s_max = t * t / (M_PI * eps * eps);

  SubordinationRule rule;
  rule.t = t;
  rule.nodes.resize(num_nodes);
  rule.weights.resize(num_nodes);
  double tau_lo = std::log(s_min), tau_hi = std::log(s_max);
  double dtau = (tau_hi - tau_lo) / (num_nodes - 1);
  for (int k = 0; k < num_nodes; ++k) {
    double s = std::exp(tau_lo + k * dtau);
    double w = eta(s) * s * dtau;
    if (k == 0 || k == num_nodes - 1) w *= 0.5;
    rule.nodes[k] = s;
    rule.weights[k] = w;
  }

  double mass = rule.total_mass();
  if (std::abs(mass - 1.0) > 100.0 * eps)
    throw convergence_error(
        "subordination rule failed to normalize: residual " +
        std::to_string(std::abs(mass - 1.0)));
  return rule;
}

}  // namespace fho
