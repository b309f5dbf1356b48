#pragma once

#include <string>
#include <vector>

#include "fho/gauss_form.hpp"
#include "fho/grid.hpp"
#include "fho/hermite.hpp"

namespace fho {

// p in [1, inf], with inf encoded distinctly.
struct LebesgueExponent {
  double value = 2.0;
  bool inf = false;

  static LebesgueExponent finite(double p);
  static LebesgueExponent infinity() { return {0.0, true}; }
  static LebesgueExponent parse(const std::string& s);

  double reciprocal() const { return inf ? 0.0 : 1.0 / value; }
  std::string str() const;
};

// Trapezoid L^p norm of grid samples; max for p = inf.
double lp_norm(const GridField& f, LebesgueExponent p);

// sigma_beta = (d / 2 beta) |1/p - 1/q|.
double sigma_exponent(int dim, double beta, LebesgueExponent p, LebesgueExponent q);

enum class MemberKind { eigenfunction, gaussian, band_limited };

struct FamilyMember {
  std::string name;
  MemberKind kind = MemberKind::gaussian;
  int degree = 0;       // eigenfunction h_degree (x) h_0(y...) on the first axis
  GaussTerm gauss;      // gaussian members
  unsigned seed = 42;   // band-limited members
};

// Eigenfunctions Phi_0, Phi_1, Phi_4; centered Gaussians of width
// eps in {1, 0.1, 0.01}; a translated Gaussian; one seeded band-limited
// field. Mixes exact-rate data with concentrating and generic data.
std::vector<FamilyMember> canonical_family(int dim);

// Additional narrow Gaussians (eps down to 1e-4) appended for q = inf
// scans, where saturating t^{-sigma} needs data narrower than the kernel
// width over the whole small-time window.
std::vector<FamilyMember> concentrating_ladder(int dim);

// Precomputed family state for repeated ratio queries. Eigenfunctions and
// band-limited fields go through the exact spectral multiplier; Gaussians
// go through closed forms (Mehler algebra for beta = 1, subordinated
// mixtures for beta = 1/2, truncated Hermite expansion otherwise), so
// small t is never limited by a grid.
class FamilyEngine {
 public:
  FamilyEngine(double beta, int dim, LebesgueExponent p, LebesgueExponent q,
               const std::vector<FamilyMember>& family, int max_degree = 48);

  std::size_t size() const { return members_.size(); }
  const std::string& member_name(std::size_t i) const { return members_[i].m.name; }
  // ||f||_p of the untouched member.
  double member_initial_norm(std::size_t i) const { return members_[i].norm_p; }
  // ||e^{-tH^beta} f||_q.
  double member_norm_q(std::size_t i, double t) const;
  // max over the family of member_norm_q / member_initial_norm.
  double ratio(double t) const;

 private:
  struct State {
    FamilyMember m;
    double norm_p = 0.0;
    double lambda = 0.0;      // eigenfunction
    double norm_q_phi = 0.0;  // eigenfunction
    SpectralField coeffs;     // band-limited
  };

  int dim_;
  double beta_;
  LebesgueExponent p_, q_;
  std::shared_ptr<const HermiteBasis> basis_;
  std::vector<State> members_;
};

// One-shot max over the family of ||e^{-tH^beta} f||_q / ||f||_p.
double operator_ratio(double beta, double t, int dim, LebesgueExponent p,
                      LebesgueExponent q, const std::vector<FamilyMember>& family,
                      int max_degree = 48);

struct DecayScanResult {
  double beta;
  int dim;
  LebesgueExponent p, q;
  std::vector<double> times;
  std::vector<double> ratios;
  double fitted_small_t_slope;  // log ratio vs log t over t <= 0.1
  double fitted_large_t_rate;   // log ratio vs t over t >= 2
  double sigma_expected;
  double c_star;  // max ratio(t) * max(t^sigma, e^{t d^beta - d^beta})
};

// Log-spaced default covering [1e-3, 10] with >= 20 points per regime.
std::vector<double> default_time_grid();

DecayScanResult decay_scan(double beta, int dim, LebesgueExponent p,
                           LebesgueExponent q, const std::vector<double>& t_grid,
                           int max_degree = 48);

struct TanhRateResult {
  std::vector<double> times;
  std::vector<double> normalized;  // ratio(t) * (tanh t)^{(d/2)|1/q - 1/p|}
  double min_value;
  double max_value;
};

// beta = 1 throughout.
TanhRateResult tanh_rate_check(LebesgueExponent p, LebesgueExponent q, int dim,
                               const std::vector<double>& t_grid);

// Least-squares slope; rejects fewer than 5 points.
double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace fho
