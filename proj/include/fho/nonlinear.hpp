#pragma once

#include <utility>
#include <vector>

#include "fho/hermite.hpp"
#include "fho/norms.hpp"

namespace fho {

// p_c = d (gamma - 1) / (2 beta), the Lebesgue index left invariant by the
// scaling of the companion fractional heat equation.
double critical_exponent(int dim, double gamma, double beta);

// d/dt u + H^beta u = |u|^{gamma-1} u, state measured in L^p.
struct SemilinearProblem {
  int dim = 1;
  double beta = 1.0;
  double gamma = 3.0;
  LebesgueExponent p = LebesgueExponent::finite(2.0);
  SpectralField u0;
  bool nonlinearity_enabled = true;  // test hook: off reduces to the linear flow

  void validate() const;
  double critical() const { return critical_exponent(dim, gamma, beta); }
};

enum class SolveStatus { completed, blew_up, tolerance_failure };

struct SolveTrajectory {
  std::vector<double> times;
  std::vector<double> lp_norms;
  std::vector<double> weighted_norms;  // t^{d(gamma-1)/(2 p gamma beta)} ||u||_{p gamma}
  std::vector<double> contraction_factors;
  SolveStatus status = SolveStatus::completed;
  double t_max_est = 0.0;  // meaningful for blew_up
};

// One step of the discrete Duhamel map by Picard iteration:
//   v = e^{-dt H^beta} u + (dt/2) (e^{-dt H^beta} + I) N(v),  N(w) = |w|^{gamma-1} w,
// the nonlinearity evaluated pointwise at the quadrature nodes. Returns the
// new state and the last measured contraction factor. Non-contraction
// within picard_max iterations raises a convergence error carrying the
// factor; solve uses that as a blow-up signal.
std::pair<SpectralField, double> duhamel_step(const SpectralField& u,
                                              const SemilinearProblem& prob,
                                              double dt,
                                              double picard_tol = 1e-10,
                                              int picard_max = 60);

// Time march with dt-halving: a step is retried at dt/2 when Picard fails
// or the norm grows more than ~5% in one step; blow-up is declared when
// the norm passes blowup_threshold or dt falls below 1e-8.
SolveTrajectory solve(const SemilinearProblem& prob, double t_end, double dt,
                      double blowup_threshold = 1e8);

// Least-squares slope of log ||u||_p against log(T_est - t) over the final
// decade of T_est - t. The caller compares against the lower-bound exponent
// d/(2 p beta) - 1/(gamma - 1).
double blowup_rate_check(const SolveTrajectory& traj, const SemilinearProblem& prob);

struct GlobalRunResult {
  SolveTrajectory traj;
  double r;
  double delta;         // 1/(gamma-1) - d/(2 r beta)
  double rho;           // sup_t t^delta ||e^{-tH^beta} u0||_r
  double bound;         // M = 10 rho
  double sup_weighted;  // sup_t t^delta ||u(t)||_r
  bool passed;
  std::vector<double> weighted_r_norms;
};

// Small-data run at the critical index: r must satisfy
// 2 beta / (d gamma (gamma-1)) < 1/r < 2 beta / (d (gamma-1)).
GlobalRunResult global_smalldata_run(const SemilinearProblem& prob, double r,
                                     double t_end, double dt);

}  // namespace fho
