#include "fho/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "fho/errors.hpp"
#include "fho/propagator.hpp"

namespace fho {

double critical_exponent(int dim, double gamma, double beta) {
  if (dim < 1 || dim > 2) throw precondition_error("critical_exponent: dim must be 1 or 2");
  if (!(gamma > 1.0)) throw precondition_error("critical_exponent: gamma must be > 1");
  if (!(beta > 0.0)) throw precondition_error("critical_exponent: beta must be positive");
  return dim * (gamma - 1.0) / (2.0 * beta);
}

void SemilinearProblem::validate() const {
  if (dim < 1 || dim > 2) throw precondition_error("problem: dim must be 1 or 2");
  if (!(beta > 0.0)) throw precondition_error("problem: beta must be positive");
  if (!(gamma > 1.0))
    throw precondition_error("problem: gamma must be > 1, got " + std::to_string(gamma));
  if (!u0.basis) throw precondition_error("problem: u0 has no basis");
  if (u0.basis->dim() != dim) throw precondition_error("problem: u0 dimension mismatch");
}

std::pair<SpectralField, double> duhamel_step(const SpectralField& u,
                                              const SemilinearProblem& prob,
                                              double dt, double picard_tol,
                                              int picard_max) {
  if (!(dt > 0.0)) throw precondition_error("duhamel_step: dt must be positive");
  SpectralField lu = apply_spectral(u, prob.beta, dt);
  if (!prob.nonlinearity_enabled) return {lu, 0.0};

  const double g = prob.gamma;
  SpectralField v = lu;
  std::vector<Complex> vals = synthesize_at_quad(v);
  std::vector<Complex> nl(vals.size());

  double prev_diff = -1.0, factor = 0.0;
  for (int m = 0; m < picard_max; ++m) {
    for (std::size_t i = 0; i < vals.size(); ++i) {
      double a = std::abs(vals[i]);
      nl[i] = (a == 0.0) ? Complex(0.0) : std::pow(a, g - 1.0) * vals[i];
    }
    SpectralField nc = project_quad_values(u.basis, nl);
    SpectralField nce = apply_spectral(nc, prob.beta, dt);
    SpectralField vn = lu;
    for (std::size_t i = 0; i < vn.coeffs.size(); ++i)
      vn.coeffs[i] += 0.5 * dt * (nce.coeffs[i] + nc.coeffs[i]);

    std::vector<Complex> vals_n = synthesize_at_quad(vn);
    double diff = 0.0, sup = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      diff = std::max(diff, std::abs(vals_n[i] - vals[i]));
      sup = std::max(sup, std::abs(vals_n[i]));
    }
    if (prev_diff > 0.0) factor = diff / prev_diff;
    v = std::move(vn);
    vals = std::move(vals_n);
    if (diff <= picard_tol * std::max(1.0, sup)) return {v, factor};
    prev_diff = diff;
  }
  throw convergence_error("picard iteration did not converge (factor " +
                          std::to_string(factor) + ")");
}

namespace {

struct MarchOutcome {
  SolveStatus status;
  double t_max_est;
};

// Shared time march: dt halves on Picard failure or on >5% norm growth in
// one step; dt below dt_min means the dynamics outruns any resolvable
// step, which is the blow-up signal alongside the norm threshold.
MarchOutcome march(const SemilinearProblem& prob, double t_end, double dt,
                   double blowup_threshold,
                   const std::function<void(double, const SpectralField&, double,
                                            double)>& on_accept) {
  prob.validate();
  if (!(t_end > 0.0)) throw precondition_error("solve: t_end must be positive");
  if (!(dt > 0.0)) throw precondition_error("solve: dt must be positive");
  if (!(blowup_threshold >= 1e3))
    throw precondition_error("solve: blowup threshold must be >= 1e3");

  const double dt_min = 1e-8;
  SpectralField u = prob.u0;
  double t = 0.0;
  double norm_prev = lp_norm(synthesize(u), prob.p);
  on_accept(0.0, u, 0.0, norm_prev);

  double dt_cur = dt;
  long steps = 0;
  while (t < t_end - 1e-12) {
    if (++steps > 500000) return {SolveStatus::tolerance_failure, t};
    double step_dt = std::min(dt_cur, t_end - t);
    bool ok = false;
    SpectralField v;
    double factor = 0.0, norm_new = 0.0;
    try {
      auto [vv, f] = duhamel_step(u, prob, step_dt);
      norm_new = lp_norm(synthesize(vv), prob.p);
      bool too_fast = norm_prev > 1e-12 && norm_new > 1.05 * norm_prev &&
                      step_dt > dt_min;
      if (std::isfinite(norm_new) && !too_fast) {
        ok = true;
        v = std::move(vv);
        factor = f;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::convergence) throw;
    }
    if (!ok) {
      dt_cur *= 0.5;
      if (dt_cur < dt_min) return {SolveStatus::blew_up, t + 2.0 * dt_cur};
      continue;
    }
    t += step_dt;
    u = std::move(v);
    norm_prev = norm_new;
    on_accept(t, u, factor, norm_new);
    if (norm_new > blowup_threshold) return {SolveStatus::blew_up, t};
  }
  return {SolveStatus::completed, t};
}

}  // namespace

SolveTrajectory solve(const SemilinearProblem& prob, double t_end, double dt,
                      double blowup_threshold) {
  SolveTrajectory traj;
  double wexp = prob.p.inf
                    ? 0.0
                    : prob.dim * (prob.gamma - 1.0) /
                          (2.0 * prob.p.value * prob.gamma * prob.beta);
  LebesgueExponent pg =
      prob.p.inf ? LebesgueExponent::infinity()
                 : LebesgueExponent::finite(prob.p.value * prob.gamma);

  MarchOutcome out = march(
      prob, t_end, dt, blowup_threshold,
      [&](double t, const SpectralField& u, double factor, double norm_p) {
        traj.times.push_back(t);
        traj.lp_norms.push_back(norm_p);
        double w = lp_norm(synthesize(u), pg);
        traj.weighted_norms.push_back(std::pow(t, wexp) * w);
        traj.contraction_factors.push_back(factor);
      });
  traj.status = out.status;
  traj.t_max_est = out.status == SolveStatus::blew_up ? out.t_max_est : 0.0;
  return traj;
}

double blowup_rate_check(const SolveTrajectory& traj, const SemilinearProblem& prob) {
  (void)prob;
  if (traj.status != SolveStatus::blew_up)
    throw precondition_error("blowup_rate_check: trajectory did not blow up");

  // Fit over tau = T_est - t in [T/1000, T/10]: close enough to the blow-up
  // time for the power law to dominate, but above the last dt-halving
  // generations, where the truncated basis can no longer resolve the
  // concentrating peak and the norm growth stalls.
  double tau_lo = 1e-3 * traj.t_max_est, tau_hi = 0.1 * traj.t_max_est;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    double tau = traj.t_max_est - traj.times[i];
    if (tau >= tau_lo && tau <= tau_hi && traj.lp_norms[i] > 0.0) {
      xs.push_back(std::log(tau));
      ys.push_back(std::log(traj.lp_norms[i]));
    }
  }
  if (xs.size() < 10)
    throw precondition_error(
        "blowup_rate_check: need >= 10 samples in the fit window, got " +
        std::to_string(xs.size()));
  return fit_slope(xs, ys);
}

GlobalRunResult global_smalldata_run(const SemilinearProblem& prob, double r,
                                     double t_end, double dt) {
  prob.validate();
  double lo = 2.0 * prob.beta / (prob.dim * prob.gamma * (prob.gamma - 1.0));
  double hi = 2.0 * prob.beta / (prob.dim * (prob.gamma - 1.0));
  if (!(lo < 1.0 / r && 1.0 / r < hi))
    throw precondition_error(
        "global run: 1/r = " + std::to_string(1.0 / r) + " outside the window (" +
        std::to_string(lo) + ", " + std::to_string(hi) + ")");

  GlobalRunResult res;
  res.r = r;
  res.delta = 1.0 / (prob.gamma - 1.0) - prob.dim / (2.0 * r * prob.beta);
  LebesgueExponent lr = LebesgueExponent::finite(r);

  // rho = sup_t t^delta ||e^{-tH^beta} u0||_r over a log-spaced sample.
  res.rho = 0.0;
  for (int j = 0; j < 60; ++j) {
    double t = 1e-3 * std::pow(std::max(t_end, 1.0) / 1e-3, j / 59.0);
    double n = lp_norm(synthesize(apply_spectral(prob.u0, prob.beta, t)), lr);
    res.rho = std::max(res.rho, std::pow(t, res.delta) * n);
  }
  res.bound = 10.0 * res.rho;

  res.sup_weighted = 0.0;
  MarchOutcome out = march(
      prob, t_end, dt, 1e8,
      [&](double t, const SpectralField& u, double factor, double norm_p) {
        res.traj.times.push_back(t);
        res.traj.lp_norms.push_back(norm_p);
        res.traj.contraction_factors.push_back(factor);
        double w = (t > 0.0) ? std::pow(t, res.delta) * lp_norm(synthesize(u), lr)
                             : 0.0;
        res.traj.weighted_norms.push_back(w);
        res.weighted_r_norms.push_back(w);
        res.sup_weighted = std::max(res.sup_weighted, w);
      });
  res.traj.status = out.status;
  res.traj.t_max_est = out.status == SolveStatus::blew_up ? out.t_max_est : 0.0;
  res.passed =
      out.status == SolveStatus::completed && res.sup_weighted <= res.bound;
  return res;
}

}  // namespace fho
