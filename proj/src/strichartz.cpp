#include "fho/strichartz.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fho/errors.hpp"
#include "fho/propagator.hpp"

namespace fho {

void AdmissibleTriplet::validate() const {
  if (dim < 1 || dim > 2) throw precondition_error("triplet: dim must be 1 or 2");
  if (!(beta > 0.0)) throw precondition_error("triplet: beta must be positive");
  if (p.reciprocal() > r.reciprocal() + 1e-14)
    throw precondition_error("triplet: requires p >= r");
  double rhs = (dim / (2.0 * beta)) * (r.reciprocal() - p.reciprocal());
  if (std::abs(q.reciprocal() - rhs) > 1e-14)
    throw precondition_error(
        "triplet: 1/q = " + std::to_string(q.reciprocal()) +
        " does not satisfy the admissibility identity (expected " +
        std::to_string(rhs) + ")");
}

void InhomPair::validate() const {
  if (dim < 1 || dim > 2) throw precondition_error("pair: dim must be 1 or 2");
  if (!(beta > 0.0)) throw precondition_error("pair: beta must be positive");
  if (q.inf || !(q.value < 1e300))
    throw precondition_error("pair: q must be finite");
  if (q1_prime.inf || !(q1_prime.value > 1.0) || !(q1_prime.value < q.value))
    throw precondition_error("pair: requires 1 < q1' < q < inf");
  if (std::abs(p1_prime.reciprocal() - p.reciprocal()) <= 1e-14)
    throw precondition_error("pair: requires p1' != p");
  double lhs = q1_prime.reciprocal() +
               (dim / (2.0 * beta)) * std::abs(p1_prime.reciprocal() - p.reciprocal());
  if (std::abs(lhs - (1.0 + q.reciprocal())) > 1e-12)
    throw precondition_error(
        "pair: exponent identity violated: lhs = " + std::to_string(lhs) +
        ", expected " + std::to_string(1.0 + q.reciprocal()));
}

double spacetime_norm_of_samples(const std::vector<double>& norms,
                                 LebesgueExponent q_time, double T) {
  if (norms.size() < 2) throw precondition_error("spacetime norm: need >= 2 samples");
  if (!(T > 0.0)) throw precondition_error("spacetime norm: T must be positive");
  if (q_time.inf) return *std::max_element(norms.begin(), norms.end());
  double dt = T / (norms.size() - 1);
  double acc = 0.0;
  for (std::size_t j = 0; j < norms.size(); ++j) {
    double w = (j == 0 || j + 1 == norms.size()) ? 0.5 : 1.0;
    acc += w * std::pow(norms[j], q_time.value);
  }
  return std::pow(acc * dt, 1.0 / q_time.value);
}

double spacetime_norm(const std::vector<GridField>& u, LebesgueExponent q_time,
                      LebesgueExponent p_space, double T) {
  std::vector<double> norms;
  norms.reserve(u.size());
  for (const GridField& f : u) norms.push_back(lp_norm(f, p_space));
  return spacetime_norm_of_samples(norms, q_time, T);
}

std::vector<AdmissibleTriplet> admissible_triplets(int dim, double beta,
                                                   LebesgueExponent r, int count) {
  if (count < 1) throw precondition_error("admissible_triplets: count must be >= 1");
  std::vector<AdmissibleTriplet> out;
  double inv_r = r.reciprocal();
  for (int i = 0; i < count; ++i) {
    double frac = (count == 1) ? 0.0 : static_cast<double>(count - 1 - i) / (count - 1);
    double inv_p = inv_r * frac;  // from p = r down to p = inf
    double inv_q = (dim / (2.0 * beta)) * (inv_r - inv_p);
    AdmissibleTriplet tr;
    tr.dim = dim;
    tr.beta = beta;
    tr.r = r;
    tr.p = inv_p == 0.0 ? LebesgueExponent::infinity()
                        : LebesgueExponent::finite(1.0 / inv_p);
    tr.q = inv_q == 0.0 ? LebesgueExponent::infinity()
                        : LebesgueExponent::finite(1.0 / inv_q);
    tr.validate();
    if (!out.empty() && out.back().p.reciprocal() == tr.p.reciprocal()) continue;
    out.push_back(tr);
  }
  return out;
}

double homogeneous_check(const AdmissibleTriplet& tr,
                         const std::vector<FamilyMember>& family, double T,
                         int time_steps, int max_degree) {
  tr.validate();
  if (!(T > 0.0)) throw precondition_error("homogeneous_check: T must be positive");
  if (time_steps < 4) throw precondition_error("homogeneous_check: too few time steps");

  FamilyEngine eng(tr.beta, tr.dim, tr.r, tr.p, family, max_degree);
  double dt = T / time_steps;
  double best = 0.0;
  std::vector<double> norms(time_steps + 1);
  for (std::size_t i = 0; i < eng.size(); ++i) {
    for (int j = 0; j <= time_steps; ++j) norms[j] = eng.member_norm_q(i, j * dt);
    double st = spacetime_norm_of_samples(norms, tr.q, T);
    best = std::max(best, st / eng.member_initial_norm(i));
  }
  return best;
}

double inhomogeneous_check(const InhomPair& pair,
                           const std::vector<ForcingMember>& family, double T,
                           int time_steps) {
  pair.validate();
  if (!(T > 0.0)) throw precondition_error("inhomogeneous_check: T must be positive");
  if (time_steps < 4) throw precondition_error("inhomogeneous_check: too few time steps");
  if (family.empty()) throw precondition_error("inhomogeneous_check: empty family");

  double dt = T / time_steps;
  double best = 0.0;
  for (const ForcingMember& fm : family) {
    if (!fm.f.basis) throw precondition_error("forcing member has no basis");
    double f_space = lp_norm(synthesize(fm.f), pair.p1_prime);
    std::vector<double> f_norms(time_steps + 1);
    for (int j = 0; j <= time_steps; ++j)
      f_norms[j] = std::exp(-fm.time_decay * j * dt) * f_space;
    double denom = spacetime_norm_of_samples(f_norms, pair.q1_prime, T);
    if (denom == 0.0) continue;

    SpectralField acc(fm.f.basis);  // zero
    std::vector<double> i_norms(time_steps + 1);
    i_norms[0] = 0.0;
    for (int j = 0; j < time_steps; ++j) {
      double w0 = std::exp(-fm.time_decay * j * dt);
      double w1 = std::exp(-fm.time_decay * (j + 1) * dt);
      SpectralField half = acc;
      for (std::size_t k = 0; k < half.coeffs.size(); ++k)
        half.coeffs[k] += 0.5 * dt * w0 * fm.f.coeffs[k];
      acc = apply_spectral(half, pair.beta, dt);
      for (std::size_t k = 0; k < acc.coeffs.size(); ++k)
        acc.coeffs[k] += 0.5 * dt * w1 * fm.f.coeffs[k];
      i_norms[j + 1] = lp_norm(synthesize(acc), pair.p);
    }
    double num = spacetime_norm_of_samples(i_norms, pair.q, T);
    best = std::max(best, num / denom);
  }
  return best;
}

}  // namespace fho
