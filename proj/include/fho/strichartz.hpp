#pragma once

#include <string>
#include <vector>

#include "fho/hermite.hpp"
#include "fho/norms.hpp"

namespace fho {

// (q, p, r) with 1/q = (d / 2 beta)(1/r - 1/p) and p >= r, indexing the
// homogeneous space-time bounds ||e^{-tH^beta} f||_{L^q_t L^p_x} <= C ||f||_r.
struct AdmissibleTriplet {
  LebesgueExponent q, p, r;
  double beta = 1.0;
  int dim = 1;

  void validate() const;  // identity enforced to 1e-14
};

// Exponent pair for the inhomogeneous bound: the Duhamel integral of a
// forcing measured in L^{q1'}_t L^{p1'}_x lands in L^q_t L^p_x when
//   1/q1' + (d / 2 beta) |1/p1' - 1/p| = 1 + 1/q,
// with p1' != p and 1 < q1' < q < inf.
struct InhomPair {
  LebesgueExponent q, p;
  LebesgueExponent q1_prime, p1_prime;
  double beta = 1.0;
  int dim = 1;

  void validate() const;
};

// (sum_j w_j dt * ||u(t_j)||_p^q)^{1/q} over uniform time samples of [0, T];
// sup over j for q = inf.
double spacetime_norm(const std::vector<GridField>& u, LebesgueExponent q_time,
                      LebesgueExponent p_space, double T);

// Same reduction applied to precomputed per-time spatial norms.
double spacetime_norm_of_samples(const std::vector<double>& norms,
                                 LebesgueExponent q_time, double T);

// Valid triplets on a lattice of p >= r values (count of them), solving the
// defining identity for q.
std::vector<AdmissibleTriplet> admissible_triplets(int dim, double beta,
                                                   LebesgueExponent r, int count);

// sup over the family of ||e^{-tH^beta} f||_{L^q([0,T], L^p)} / ||f||_r.
double homogeneous_check(const AdmissibleTriplet& tr,
                         const std::vector<FamilyMember>& family, double T,
                         int time_steps = 2000, int max_degree = 48);

// Forcing F(s) = e^{-decay * s} f for the inhomogeneous bound.
struct ForcingMember {
  std::string name;
  SpectralField f;
  double time_decay = 0.0;
};

// sup over forcings of
//   ||int_0^t e^{-(t-s)H^beta} F(s) ds||_{L^q L^p} / ||F||_{L^{q1'} L^{p1'}},
// the Duhamel integral accumulated by the exponential trapezoid recurrence
//   I_{j+1} = e^{-dt H^beta} (I_j + dt/2 F_j) + dt/2 F_{j+1}.
double inhomogeneous_check(const InhomPair& pair,
                           const std::vector<ForcingMember>& family, double T,
                           int time_steps = 2000);

}  // namespace fho
