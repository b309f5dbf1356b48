#include "fho/gauss_form.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fho/errors.hpp"
#include "fho/hermite.hpp"
#include "fho/subordinator.hpp"

namespace fho {

namespace {

// Half-width at which one axis factor has dropped ~50 e-folds.
double support_halfwidth(double a) { return std::sqrt(100.0 / a); }

struct Axis1D {
  double amp_factor;
  double mu;
  double a;
};

// One axis of the Mehler flow on exp(-a (y - mu)^2 / 2): complete the
// square in the convolution. Written so that small t has no cancellation:
//   pS = 1 + S (tau + a),   a' = tau + (tau + a) / pS,
//   mu' = a mu / (pS a'),   factor = pS^{-1/2} exp(E).
Axis1D mehler_axis(double a, double mu, double t) {
  double tau = std::tanh(t);
  double S = std::sinh(2.0 * t);
  double pS = 1.0 + S * (tau + a);
  double ap = tau + (tau + a) / pS;
  double mup = a * mu / (pS * ap);
  double p = pS / S;
  double E = a * a * mu * mu / (2.0 * p) - a * mu * mu / 2.0 + ap * mup * mup / 2.0;
  return {std::exp(E) / std::sqrt(pS), mup, ap};
}

}  // namespace

double GaussTerm::eval(double x) const {
  double u = x - mu[0];
  return amp * std::exp(-0.5 * a[0] * u * u);
}

double GaussTerm::eval(double x, double y) const {
  double u = x - mu[0], v = y - mu[1];
  return amp * std::exp(-0.5 * (a[0] * u * u + a[1] * v * v));
}

GaussTerm mehler_apply(const GaussTerm& g, double t) {
  if (!(t > 0.0)) throw precondition_error("mehler_apply: t must be positive");
  GaussTerm out = g;
  if (t > 250.0) {
    // sinh(2t) overflows and the amplitude factor is < e^{-250} per axis
    // anyway; return the exact limit shape with zero amplitude.
    out.amp = 0.0;
    out.mu = {0.0, 0.0};
    out.a = {1.0, 1.0};
    return out;
  }
  double amp = g.amp;
  for (int i = 0; i < g.dim; ++i) {
    Axis1D ax = mehler_axis(g.a[i], g.mu[i], t);
    amp *= ax.amp_factor;
    out.mu[i] = ax.mu;
    out.a[i] = ax.a;
  }
  out.amp = amp;
  return out;
}

GaussMix mehler_apply(const GaussMix& f, double t) {
  GaussMix out;
  out.dim = f.dim;
  out.terms.reserve(f.terms.size());
  for (const GaussTerm& g : f.terms) out.terms.push_back(mehler_apply(g, t));
  return out;
}

GaussMix subordinate_apply(const GaussMix& f, double t) {
  SubordinationRule rule = make_subordination_rule(t);
  GaussMix out;
  out.dim = f.dim;
  out.terms.reserve(f.terms.size() * rule.nodes.size());
  for (std::size_t m = 0; m < rule.nodes.size(); ++m) {
    for (const GaussTerm& g : f.terms) {
      GaussTerm h = mehler_apply(g, rule.nodes[m]);
      h.amp *= rule.weights[m];
      out.terms.push_back(h);
    }
  }
  return out;
}

double GaussMix::eval(double x) const {
  double s = 0.0;
  for (const GaussTerm& g : terms) s += g.eval(x);
  return s;
}

double GaussMix::eval(double x, double y) const {
  double s = 0.0;
  for (const GaussTerm& g : terms) s += g.eval(x, y);
  return s;
}

double GaussMix::sup() const {
  if (terms.empty()) return 0.0;

  bool common_center = true;
  for (const GaussTerm& g : terms)
    for (int i = 0; i < dim; ++i)
      if (std::abs(g.mu[i] - terms[0].mu[i]) > 1e-9) common_center = false;
  bool positive = std::all_of(terms.begin(), terms.end(),
                              [](const GaussTerm& g) { return g.amp >= 0.0; });
  if (common_center && positive) {
    double s = 0.0;
    for (const GaussTerm& g : terms) s += g.amp;
    return s;
  }

  double lo[2], hi[2];
  for (int i = 0; i < dim; ++i) {
    lo[i] = 1e300;
    hi[i] = -1e300;
    for (const GaussTerm& g : terms) {
      double w = support_halfwidth(g.a[i]);
      lo[i] = std::min(lo[i], g.mu[i] - w);
      hi[i] = std::max(hi[i], g.mu[i] + w);
    }
  }

  auto refine1d = [](auto&& fn, double x, double h) {
    double a = x - h, b = x + h;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d2 = a + gr * (b - a);
    double fc = fn(c), fd = fn(d2);
    for (int it = 0; it < 80; ++it) {
      if (fc > fd) {
        b = d2; d2 = c; fd = fc;
        c = b - gr * (b - a); fc = fn(c);
      } else {
        a = c; c = d2; fc = fd;
        d2 = a + gr * (b - a); fd = fn(d2);
      }
    }
    return 0.5 * (a + b);
  };

  if (dim == 1) {
    const int n = 4001;
    double h = (hi[0] - lo[0]) / (n - 1);
    double best_x = lo[0], best = -1e300;
    for (int j = 0; j < n; ++j) {
      double x = lo[0] + j * h;
      double v = std::abs(eval(x));
      if (v > best) { best = v; best_x = x; }
    }
    auto fn = [&](double x) { return std::abs(eval(x)); };
    double x = refine1d(fn, best_x, h);
    return std::abs(eval(x));
  }

  const int n = 301;
  double hx = (hi[0] - lo[0]) / (n - 1), hy = (hi[1] - lo[1]) / (n - 1);
  double bx = lo[0], by = lo[1], best = -1e300;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double x = lo[0] + i * hx, y = lo[1] + j * hy;
      double v = std::abs(eval(x, y));
      if (v > best) { best = v; bx = x; by = y; }
    }
  for (int round = 0; round < 8; ++round) {
    auto fx = [&](double x) { return std::abs(eval(x, by)); };
    bx = refine1d(fx, bx, hx);
    auto fy = [&](double y) { return std::abs(eval(bx, y)); };
    by = refine1d(fy, by, hy);
    hx *= 0.25; hy *= 0.25;
  }
  return std::abs(eval(bx, by));
}

namespace {

// Shared 1D sampling plan: bounding interval and spacing resolving the
// narrowest term, with the point count kept within budget.
struct AxisPlan {
  double lo, hi, h;
  int n;
};

AxisPlan plan_axis(const std::vector<GaussTerm>& terms, int axis) {
  double lo = 1e300, hi = -1e300, amax = 0.0;
  for (const GaussTerm& g : terms) {
    double w = support_halfwidth(g.a[axis]);
    lo = std::min(lo, g.mu[axis] - w);
    hi = std::max(hi, g.mu[axis] + w);
    amax = std::max(amax, g.a[axis]);
  }
  double sigma_min = 1.0 / std::sqrt(amax);
  double h = sigma_min / 24.0;
  long n = std::lround((hi - lo) / h) + 1;
  n = std::clamp(n, 2001L, 4000001L);
  h = (hi - lo) / (n - 1);
  return {lo, hi, h, static_cast<int>(n)};
}

// Accumulate the mixture on a uniform axis grid, visiting only each term's
// own support so narrow terms stay cheap.
void accumulate_1d(const std::vector<GaussTerm>& terms, int axis,
                   const AxisPlan& pl, std::vector<double>& vals) {
  for (const GaussTerm& g : terms) {
    double w = support_halfwidth(g.a[axis]);
    int j0 = std::max(0, static_cast<int>((g.mu[axis] - w - pl.lo) / pl.h));
    int j1 = std::min(pl.n - 1, static_cast<int>((g.mu[axis] + w - pl.lo) / pl.h) + 1);
    for (int j = j0; j <= j1; ++j) {
      double u = pl.lo + j * pl.h - g.mu[axis];
      vals[j] += g.amp * std::exp(-0.5 * g.a[axis] * u * u);
    }
  }
}

}  // namespace

double GaussMix::lp_norm(double p) const {
  if (!(p >= 1.0)) throw precondition_error("lp_norm: p must be >= 1");
  if (terms.empty()) return 0.0;

  if (terms.size() == 1) {
    const GaussTerm& g = terms[0];
    double v = std::abs(g.amp);
    for (int i = 0; i < dim; ++i)
      v *= std::pow(2.0 * M_PI / (g.a[i] * p), 0.5 / p);
    return v;
  }

  if (dim == 1) {
    AxisPlan pl = plan_axis(terms, 0);
    std::vector<double> vals(pl.n, 0.0);
    accumulate_1d(terms, 0, pl, vals);
    double s = 0.0;
    for (int j = 0; j < pl.n; ++j) {
      double w = (j == 0 || j == pl.n - 1) ? 0.5 : 1.0;
      s += w * std::pow(std::abs(vals[j]), p);
    }
    return std::pow(s * pl.h, 1.0 / p);
  }

  // d = 2: per-term separable accumulation on a tensor grid, axis grids
  // capped so the full field stays in memory.
  AxisPlan px = plan_axis(terms, 0), py = plan_axis(terms, 1);
  auto cap = [](AxisPlan& pl) {
    if (pl.n > 3001) {
      pl.n = 3001;
      pl.h = (pl.hi - pl.lo) / (pl.n - 1);
    }
  };
  cap(px); cap(py);
  std::vector<double> field(static_cast<std::size_t>(px.n) * py.n, 0.0);
  std::vector<double> gx(px.n), gy(py.n);
  for (const GaussTerm& g : terms) {
    for (int i = 0; i < px.n; ++i) {
      double u = px.lo + i * px.h - g.mu[0];
      gx[i] = std::exp(-0.5 * g.a[0] * u * u);
    }
    for (int j = 0; j < py.n; ++j) {
      double v = py.lo + j * py.h - g.mu[1];
      gy[j] = g.amp * std::exp(-0.5 * g.a[1] * v * v);
    }
    for (int i = 0; i < px.n; ++i) {
      if (gx[i] < 1e-300) continue;
      double* row = field.data() + static_cast<std::size_t>(i) * py.n;
      for (int j = 0; j < py.n; ++j) row[j] += gx[i] * gy[j];
    }
  }
  double s = 0.0;
  for (int i = 0; i < px.n; ++i) {
    double wi = (i == 0 || i == px.n - 1) ? 0.5 : 1.0;
    const double* row = field.data() + static_cast<std::size_t>(i) * py.n;
    double rs = 0.0;
    for (int j = 0; j < py.n; ++j) {
      double wj = (j == 0 || j == py.n - 1) ? 0.5 : 1.0;
      rs += wj * std::pow(std::abs(row[j]), p);
    }
    s += wi * rs;
  }
  return std::pow(s * px.h * py.h, 1.0 / p);
}

std::vector<double> hermite_coeffs_1d(const GaussMix& f, int kmax) {
  if (f.dim != 1)
    throw precondition_error("hermite_coeffs_1d: mix must be 1-dimensional");
  if (kmax < 0 || kmax > kMaxHermiteDegree)
    throw precondition_error("hermite_coeffs_1d: degree out of range (max " +
                             std::to_string(kMaxHermiteDegree) + ")");

  AxisPlan pl = plan_axis(f.terms, 0);
  // The integrand also oscillates at the Hermite wavelength ~ pi/sqrt(2k+1).
  double osc = M_PI / (24.0 * std::sqrt(2.0 * kmax + 1.0));
  if (pl.h > osc) {
    long n = std::lround((pl.hi - pl.lo) / osc) + 1;
    n = std::min(n, 4000001L);
    pl.n = static_cast<int>(n);
    pl.h = (pl.hi - pl.lo) / (pl.n - 1);
  }

  std::vector<double> vals(pl.n, 0.0);
  accumulate_1d(f.terms, 0, pl, vals);

  std::vector<double> coeffs(static_cast<std::size_t>(kmax) + 1, 0.0);
  const double h0c = std::pow(M_PI, -0.25);
  for (int j = 0; j < pl.n; ++j) {
    double x = pl.lo + j * pl.h;
    double w = ((j == 0 || j == pl.n - 1) ? 0.5 : 1.0) * pl.h * vals[j];
    if (w == 0.0) continue;
    double hm1 = 0.0, hk = h0c * std::exp(-0.5 * x * x);
    coeffs[0] += w * hk;
    for (int k = 1; k <= kmax; ++k) {
      double hk1 = std::sqrt(2.0 / k) * x * hk - std::sqrt((k - 1.0) / k) * hm1;
      hm1 = hk;
      hk = hk1;
      coeffs[k] += w * hk;
    }
  }
  return coeffs;
}

}  // namespace fho
