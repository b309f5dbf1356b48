#include "fho/norms.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "fho/errors.hpp"
#include "fho/hermite.hpp"
#include "fho/propagator.hpp"

namespace fho {

LebesgueExponent LebesgueExponent::finite(double p) {
  if (!(p >= 1.0))
    throw precondition_error("Lebesgue exponent must be >= 1, got " + std::to_string(p));
  return {p, false};
}

LebesgueExponent LebesgueExponent::parse(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Inf") return infinity();
  double v;
  try {
    std::size_t pos = 0;
    v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
  } catch (const std::exception&) {
    throw type_error("cannot parse Lebesgue exponent '" + s + "'");
  }
  return finite(v);
}

std::string LebesgueExponent::str() const {
  if (inf) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", value);
  return buf;
}

double lp_norm(const GridField& f, LebesgueExponent p) {
  if (p.inf) {
    double m = 0.0;
    for (const Complex& v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  const UniformGrid& g = f.grid;
  const int n = g.points_per_axis;
  double s = 0.0;
  if (g.dim == 1) {
    for (int j = 0; j < n; ++j)
      s += g.axis_weight(j) * std::pow(std::abs(f.values[j]), p.value);
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        s += g.axis_weight(i) * g.axis_weight(j) *
             std::pow(std::abs(f.values[static_cast<std::size_t>(i) * n + j]), p.value);
  }
  return std::pow(s, 1.0 / p.value);
}

double sigma_exponent(int dim, double beta, LebesgueExponent p, LebesgueExponent q) {
  return (dim / (2.0 * beta)) * std::abs(p.reciprocal() - q.reciprocal());
}

namespace {

FamilyMember gaussian_member(int dim, const std::string& name, double a,
                             double center) {
  FamilyMember m;
  m.name = name;
  m.kind = MemberKind::gaussian;
  m.gauss.dim = dim;
  m.gauss.amp = 1.0;
  m.gauss.mu = {center, 0.0};
  m.gauss.a = {a, a};
  return m;
}

}  // namespace

std::vector<FamilyMember> canonical_family(int dim) {
  std::vector<FamilyMember> fam;
  for (int k : {0, 1, 4}) {
    FamilyMember m;
    m.name = "phi" + std::to_string(k);
    m.kind = MemberKind::eigenfunction;
    m.degree = k;
    fam.push_back(m);
  }
  fam.push_back(gaussian_member(dim, "gauss_eps1", 1.0, 0.0));
  fam.push_back(gaussian_member(dim, "gauss_eps0.1", 1.0 / 0.01, 0.0));
  fam.push_back(gaussian_member(dim, "gauss_eps0.01", 1.0 / 1e-4, 0.0));
  fam.push_back(gaussian_member(dim, "gauss_shift2", 1.0, 2.0));
  FamilyMember b;
  b.name = "band_seed42";
  b.kind = MemberKind::band_limited;
  b.seed = 42;
  fam.push_back(b);
  return fam;
}

std::vector<FamilyMember> concentrating_ladder(int dim) {
  // Decade-spaced widths interleaving the canonical eps values: the sup
  // over the family then tracks the t^{-sigma} envelope with kinks only
  // half a decade apart, which keeps the fitted slope honest.
  std::vector<FamilyMember> fam;
  for (double a : {1e1, 1e3, 1e5, 1e6, 1e7, 1e8}) {
    char name[32];
    std::snprintf(name, sizeof name, "gauss_a1e%d", static_cast<int>(std::lround(std::log10(a))));
    fam.push_back(gaussian_member(dim, name, a, 0.0));
  }
  return fam;
}

namespace {

// Frequency cutoff for a general-beta multiplier: degrees with
// t (2k+d)^beta > 45 contribute below double precision.
int effective_degree(double beta, double t, int dim) {
  double lambda_c = std::pow(45.0 / t, 1.0 / beta);
  int k = static_cast<int>(std::ceil((lambda_c - dim) / 2.0));
  k = std::max(k, 16);
  if (k > kMaxHermiteDegree)
    throw precondition_error(
        "time " + std::to_string(t) + " at beta " + std::to_string(beta) +
        " needs Hermite degree " + std::to_string(k) + " > cap " +
        std::to_string(kMaxHermiteDegree));
  return k;
}

// ||sum_k c_k h_k||_q on a fine 1D grid (recurrence per point).
double series_norm_1d(const std::vector<double>& c, LebesgueExponent q) {
  const int kmax = static_cast<int>(c.size()) - 1;
  const double L = 14.0;
  const int n = 5601;
  const double h = 2.0 * L / (n - 1);
  const double h0c = std::pow(M_PI, -0.25);
  double sup = 0.0, acc = 0.0;
  for (int j = 0; j < n; ++j) {
    double x = -L + j * h;
    double hm1 = 0.0, hk = h0c * std::exp(-0.5 * x * x);
    double u = c[0] * hk;
    for (int k = 1; k <= kmax; ++k) {
      double hk1 = std::sqrt(2.0 / k) * x * hk - std::sqrt((k - 1.0) / k) * hm1;
      hm1 = hk;
      hk = hk1;
      u += c[k] * hk;
    }
    double au = std::abs(u);
    sup = std::max(sup, au);
    if (!q.inf) {
      double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
      acc += w * std::pow(au, q.value);
    }
  }
  return q.inf ? sup : std::pow(acc * h, 1.0 / q.value);
}

}  // namespace

FamilyEngine::FamilyEngine(double beta, int dim, LebesgueExponent p,
                           LebesgueExponent q,
                           const std::vector<FamilyMember>& family,
                           int max_degree)
    : dim_(dim), beta_(beta), p_(p), q_(q) {
  if (family.empty()) throw precondition_error("test family must be nonempty");
  bool needs_basis = std::any_of(family.begin(), family.end(), [](const FamilyMember& m) {
    return m.kind != MemberKind::gaussian;
  });
  if (needs_basis)
    basis_ = std::make_shared<HermiteBasis>(HermiteBasis::build(dim, max_degree));

  for (const FamilyMember& fm : family) {
    State st;
    st.m = fm;
    switch (fm.kind) {
      case MemberKind::gaussian: {
        GaussMix mix{dim, {fm.gauss}};
        st.norm_p = p.inf ? mix.sup() : mix.lp_norm(p.value);
        break;
      }
      case MemberKind::eigenfunction: {
        if (fm.degree > basis_->max_degree())
          throw precondition_error("family degree exceeds basis degree");
        SpectralField c(basis_);
        c.coeffs[c.index(fm.degree, 0)] = 1.0;
        GridField phi = synthesize(c);
        st.lambda = eigenvalue_of(fm.degree, dim);
        st.norm_p = lp_norm(phi, p);
        st.norm_q_phi = lp_norm(phi, q);
        break;
      }
      case MemberKind::band_limited: {
        std::mt19937 rng(fm.seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        SpectralField c(basis_);
        for (Complex& z : c.coeffs) z = Complex(u(rng), u(rng));
        st.coeffs = c;
        st.norm_p = lp_norm(synthesize(c), p);
        break;
      }
    }
    if (!(st.norm_p > 0.0))
      throw precondition_error("family member '" + fm.name + "' has zero L^p norm");
    members_.push_back(std::move(st));
  }
}

double FamilyEngine::member_norm_q(std::size_t i, double t) const {
  const State& st = members_[i];
  switch (st.m.kind) {
    case MemberKind::eigenfunction:
      return std::exp(-t * std::pow(st.lambda, beta_)) * st.norm_q_phi;
    case MemberKind::band_limited:
      return lp_norm(synthesize(apply_spectral(st.coeffs, beta_, t)), q_);
    case MemberKind::gaussian: {
      GaussMix mix{dim_, {st.m.gauss}};
      if (t == 0.0) return q_.inf ? mix.sup() : mix.lp_norm(q_.value);
      if (beta_ == 1.0) {
        GaussMix out = mehler_apply(mix, t);
        return q_.inf ? out.sup() : out.lp_norm(q_.value);
      }
      if (beta_ == 0.5) {
        GaussMix out = subordinate_apply(mix, t);
        return q_.inf ? out.sup() : out.lp_norm(q_.value);
      }
      if (dim_ != 1)
        throw precondition_error(
            "Gaussian family members require d = 1 for beta outside {1/2, 1}");
      int keff = effective_degree(beta_, t, dim_);
      std::vector<double> c = hermite_coeffs_1d(mix, keff);
      for (int k = 0; k <= keff; ++k)
        c[k] *= std::exp(-t * std::pow(eigenvalue_of(k, 1), beta_));
      return series_norm_1d(c, q_);
    }
  }
  return 0.0;
}

double FamilyEngine::ratio(double t) const {
  double best = 0.0;
  for (std::size_t i = 0; i < members_.size(); ++i)
    best = std::max(best, member_norm_q(i, t) / members_[i].norm_p);
  return best;
}

double operator_ratio(double beta, double t, int dim, LebesgueExponent p,
                      LebesgueExponent q, const std::vector<FamilyMember>& family,
                      int max_degree) {
  if (!(t > 0.0)) throw precondition_error("operator_ratio: t must be positive");
  FamilyEngine eng(beta, dim, p, q, family, max_degree);
  return eng.ratio(t);
}

std::vector<double> default_time_grid() {
  std::vector<double> ts;
  for (int j = 0; j < 25; ++j)
    ts.push_back(1e-3 * std::pow(100.0, j / 24.0));  // [1e-3, 0.1]
  for (int j = 1; j <= 10; ++j)
    ts.push_back(0.1 * std::pow(20.0, j / 10.0));  // (0.1, 2]
  for (int j = 1; j <= 21; ++j) ts.push_back(2.0 + 8.0 * j / 21.0);  // (2, 10]
  return ts;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size())
    throw precondition_error("fit_slope: length mismatch");
  if (xs.size() < 5)
    throw precondition_error("fit needs at least 5 points, got " +
                             std::to_string(xs.size()));
  double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double denom = n * sxx - sx * sx;
  if (denom <= 0.0) throw precondition_error("fit_slope: degenerate abscissae");
  return (n * sxy - sx * sy) / denom;
}

DecayScanResult decay_scan(double beta, int dim, LebesgueExponent p,
                           LebesgueExponent q, const std::vector<double>& t_grid,
                           int max_degree) {
  if (!(beta > 0.0)) throw precondition_error("decay_scan: beta must be positive");
  std::vector<double> ts = t_grid;
  std::sort(ts.begin(), ts.end());
  if (!ts.empty() && !(ts.front() > 0.0))
    throw precondition_error("decay_scan: times must be positive");

  std::vector<FamilyMember> fam = canonical_family(dim);
  if (q.inf)
    for (const FamilyMember& m : concentrating_ladder(dim)) fam.push_back(m);

  FamilyEngine eng(beta, dim, p, q, fam, max_degree);

  DecayScanResult r;
  r.beta = beta;
  r.dim = dim;
  r.p = p;
  r.q = q;
  r.times = ts;
  r.sigma_expected = sigma_exponent(dim, beta, p, q);
  r.ratios.reserve(ts.size());
  for (double t : ts) r.ratios.push_back(eng.ratio(t));

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (ts[i] <= 0.1) {
      xs.push_back(std::log(ts[i]));
      ys.push_back(std::log(r.ratios[i]));
    }
  r.fitted_small_t_slope = fit_slope(xs, ys);

  xs.clear();
  ys.clear();
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (ts[i] >= 2.0) {
      xs.push_back(ts[i]);
      ys.push_back(std::log(r.ratios[i]));
    }
  r.fitted_large_t_rate = fit_slope(xs, ys);

  double db = std::pow(static_cast<double>(dim), beta);
  r.c_star = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    double env = std::max(std::pow(ts[i], r.sigma_expected),
                          std::exp(ts[i] * db - db));
    r.c_star = std::max(r.c_star, r.ratios[i] * env);
  }
  return r;
}

TanhRateResult tanh_rate_check(LebesgueExponent p, LebesgueExponent q, int dim,
                               const std::vector<double>& t_grid) {
  std::vector<FamilyMember> fam = canonical_family(dim);
  if (q.inf)
    for (const FamilyMember& m : concentrating_ladder(dim)) fam.push_back(m);
  FamilyEngine eng(1.0, dim, p, q, fam, 48);

  double expo = 0.5 * dim * std::abs(q.reciprocal() - p.reciprocal());
  TanhRateResult r;
  r.min_value = 1e300;
  r.max_value = 0.0;
  for (double t : t_grid) {
    double v = eng.ratio(t) * std::pow(std::tanh(t), expo);
    r.times.push_back(t);
    r.normalized.push_back(v);
    r.min_value = std::min(r.min_value, v);
    r.max_value = std::max(r.max_value, v);
  }
  return r;
}

}  // namespace fho
