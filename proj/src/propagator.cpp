#include "fho/propagator.hpp"

#include <cmath>
#include <string>

#include "fho/errors.hpp"
#include "fho/simd.hpp"

namespace fho {

Route route_from_string(const std::string& s) {
  if (s == "spectral") return Route::spectral;
  if (s == "mehler") return Route::mehler;
  if (s == "subordination") return Route::subordination;
  throw type_error("unknown route '" + s +
                   "' (expected spectral, mehler, or subordination)");
}

const char* route_name(Route r) {
  switch (r) {
    case Route::spectral: return "spectral";
    case Route::mehler: return "mehler";
    case Route::subordination: return "subordination";
  }
  return "?";
}

void PropagatorSpec::validate() const {
  if (!(beta > 0.0))
    throw precondition_error("propagator: beta must be positive, got " +
                             std::to_string(beta));
  if (!(t >= 0.0))
    throw precondition_error("propagator: t must be nonnegative, got " +
                             std::to_string(t));
  if (route == Route::mehler && beta != 1.0)
    throw precondition_error("propagator: the Mehler route requires beta = 1");
  if (route == Route::subordination && beta != 0.5)
    throw precondition_error(
        "propagator: the subordination route requires beta = 1/2");
}

SpectralField apply_spectral(const SpectralField& f, double beta, double t) {
  PropagatorSpec{beta, t, Route::spectral}.validate();
  SpectralField out = f;
  if (t == 0.0) return out;
  const int N = f.basis->max_degree();
  const int d = f.basis->dim();
  if (d == 1) {
    for (int k = 0; k <= N; ++k)
      out.coeffs[k] *= std::exp(-t * std::pow(eigenvalue_of(k, d), beta));
  } else {
    for (int a1 = 0; a1 <= N; ++a1)
      for (int a2 = 0; a2 <= N; ++a2)
        out.coeffs[f.index(a1, a2)] *=
            std::exp(-t * std::pow(eigenvalue_of(a1 + a2, d), beta));
  }
  return out;
}

SpectralField apply_subordination(const SpectralField& f, double t) {
  PropagatorSpec{0.5, t, Route::subordination}.validate();
  SpectralField out = f;
  if (t == 0.0) return out;
  SubordinationRule rule = make_subordination_rule(t);

  const int N = f.basis->max_degree();
  const int d = f.basis->dim();
  // Multiplier per total degree: sum_m w_m e^{-s_m lambda} ~ e^{-t sqrt(lambda)}.
  std::vector<double> mult(static_cast<std::size_t>(d * N) + 1);
  for (int k = 0; k <= d * N; ++k) mult[k] = rule.laplace(eigenvalue_of(k, d));

  if (d == 1) {
    for (int k = 0; k <= N; ++k) out.coeffs[k] *= mult[k];
  } else {
    for (int a1 = 0; a1 <= N; ++a1)
      for (int a2 = 0; a2 <= N; ++a2) out.coeffs[f.index(a1, a2)] *= mult[a1 + a2];
  }
  return out;
}

namespace {

// out_i = sum_j kernel(|i-j| h) g_j via a reversed Toeplitz row so each
// output is one contiguous dot product.
void toeplitz_conv(const std::vector<double>& krev, const double* g,
                   double* out, int n) {
  for (int i = 0; i < n; ++i)
    out[i] = simd::dot(krev.data() + (n - 1 - i), g, static_cast<std::size_t>(n));
}

}  // namespace

MehlerApplicator::MehlerApplicator(const UniformGrid& grid) : grid_(grid) {
  // Fix the overall constant by demanding e^{-tH} Phi_0 = e^{-d t} Phi_0
  // at t = 1, evaluated at the grid's largest ground-state sample.
  const int d = grid_.dim;
  GridField phi0(grid_);
  const int n = grid_.points_per_axis;
  const double c0 = std::pow(M_PI, -0.25 * d);
  if (d == 1) {
    for (int j = 0; j < n; ++j) {
      double x = grid_.axis_point(j);
      phi0.values[j] = c0 * std::exp(-0.5 * x * x);
    }
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double x = grid_.axis_point(i), y = grid_.axis_point(j);
        phi0.values[static_cast<std::size_t>(i) * n + j] =
            c0 * std::exp(-0.5 * (x * x + y * y));
      }
  }
  const double t1 = 1.0;
  const double constant = std::pow(2.0 * M_PI * std::sinh(2.0 * t1), -0.5 * d);
  GridField raw = apply_raw(phi0, t1, constant);

  std::size_t peak = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < phi0.values.size(); ++i)
    if (std::abs(phi0.values[i]) > best) {
      best = std::abs(phi0.values[i]);
      peak = i;
    }
  double want = std::exp(-static_cast<double>(d)) * phi0.values[peak].real();
  double got = raw.values[peak].real();
  if (!(got > 0.0))
    throw convergence_error("Mehler calibration produced a nonpositive peak");
  calib_ = want / got;
  if (std::abs(calib_ - 1.0) > 1e-3)
    throw convergence_error("Mehler calibration off by more than 0.1%: factor " +
                            std::to_string(calib_));
}

GridField MehlerApplicator::apply(const GridField& f, double t) const {
  if (!(f.grid == grid_))
    throw precondition_error("Mehler apply: field grid does not match applicator");
  if (!(t > 0.0))
    throw precondition_error("Mehler apply: t must be positive");
  // The Gaussian factor e^{-(tanh t / 2)|x|^2} narrows like sqrt(tanh t);
  // require at least ~4 samples across that width.
  double width = std::sqrt(std::tanh(t));
  if (grid_.spacing() > 0.25 * width)
    throw precondition_error(
        "Mehler apply: grid spacing " + std::to_string(grid_.spacing()) +
        " too coarse for t = " + std::to_string(t) + " (need <= " +
        std::to_string(0.25 * width) + ")");
  const double constant =
      calib_ * std::pow(2.0 * M_PI * std::sinh(2.0 * t), -0.5 * grid_.dim);
  return apply_raw(f, t, constant);
}

GridField MehlerApplicator::apply_raw(const GridField& f, double t,
                                      double constant) const {
  const int n = grid_.points_per_axis;
  const int d = grid_.dim;
  const double h = grid_.spacing();
  const double tau = std::tanh(t);     // pre/post Gaussian exponent rate
  const double S = std::sinh(2.0 * t); // convolution kernel variance

  // e^{-(tau/2) x^2} along one axis, and the reversed Toeplitz kernel row
  // krev[p] = exp(-((n-1-p) h)^2 / (2S)) for p <= n-1, mirrored above.
  std::vector<double> damp(n);
  for (int j = 0; j < n; ++j) {
    double x = grid_.axis_point(j);
    damp[j] = std::exp(-0.5 * tau * x * x);
  }
  std::vector<double> krev(2 * n - 1);
  for (int p = 0; p < 2 * n - 1; ++p) {
    double dx = (p - (n - 1)) * h;
    krev[p] = std::exp(-dx * dx / (2.0 * S));
  }

  GridField out(grid_);
  if (d == 1) {
    std::vector<double> gre(n), gim(n), ore(n), oim(n);
    for (int j = 0; j < n; ++j) {
      double w = damp[j] * grid_.axis_weight(j);
      gre[j] = f.values[j].real() * w;
      gim[j] = f.values[j].imag() * w;
    }
    toeplitz_conv(krev, gre.data(), ore.data(), n);
    toeplitz_conv(krev, gim.data(), oim.data(), n);
    for (int i = 0; i < n; ++i)
      out.values[i] = Complex(ore[i], oim[i]) * (constant * damp[i]);
    return out;
  }

  // d = 2: damp, convolve each row (axis 2), then each column (axis 1),
  // then damp again. The constant already carries the d = 2 power.
  std::size_t nn = static_cast<std::size_t>(n) * n;
  std::vector<double> re(nn), im(nn), tre(nn), tim(nn);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::size_t id = static_cast<std::size_t>(i) * n + j;
      double w = damp[i] * damp[j] * grid_.axis_weight(i) * grid_.axis_weight(j);
      re[id] = f.values[id].real() * w;
      im[id] = f.values[id].imag() * w;
    }
  for (int i = 0; i < n; ++i) {
    toeplitz_conv(krev, re.data() + static_cast<std::size_t>(i) * n,
                  tre.data() + static_cast<std::size_t>(i) * n, n);
    toeplitz_conv(krev, im.data() + static_cast<std::size_t>(i) * n,
                  tim.data() + static_cast<std::size_t>(i) * n, n);
  }
  // Columns: transpose, convolve rows, transpose back (keeps dots contiguous).
  std::vector<double> cre(nn), cim(nn);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cre[static_cast<std::size_t>(j) * n + i] = tre[static_cast<std::size_t>(i) * n + j];
      cim[static_cast<std::size_t>(j) * n + i] = tim[static_cast<std::size_t>(i) * n + j];
    }
  for (int j = 0; j < n; ++j) {
    toeplitz_conv(krev, cre.data() + static_cast<std::size_t>(j) * n,
                  tre.data() + static_cast<std::size_t>(j) * n, n);
    toeplitz_conv(krev, cim.data() + static_cast<std::size_t>(j) * n,
                  tim.data() + static_cast<std::size_t>(j) * n, n);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::size_t id = static_cast<std::size_t>(i) * n + j;
      std::size_t tid = static_cast<std::size_t>(j) * n + i;
      out.values[id] =
          Complex(tre[tid], tim[tid]) * (constant * damp[i] * damp[j]);
    }
  return out;
}

double gaussian_fourier_selfcheck(double a, const UniformGrid& grid) {
  if (!(a > 0.0))
    throw precondition_error("fourier selfcheck: a must be positive");
  const int n = grid.points_per_axis;
  const int d = grid.dim;

  // 1D transform of exp(-pi a y^2) by trapezoid sum; the d = 2 case
  // factorizes exactly into a product of axis transforms.
  std::vector<Complex> ft(n);
  for (int i = 0; i < n; ++i) {
    double x = grid.axis_point(i);
    Complex acc = 0.0;
    for (int j = 0; j < n; ++j) {
      double y = grid.axis_point(j);
      double g = std::exp(-M_PI * a * y * y) * grid.axis_weight(j);
      double ph = -2.0 * M_PI * x * y;
      acc += g * Complex(std::cos(ph), std::sin(ph));
    }
    ft[i] = acc;
  }

  double err = 0.0;
  if (d == 1) {
    for (int i = 0; i < n; ++i) {
      double x = grid.axis_point(i);
      double want = std::pow(a, -0.5) * std::exp(-M_PI * x * x / a);
      err = std::max(err, std::abs(ft[i] - Complex(want)));
    }
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double x = grid.axis_point(i), y = grid.axis_point(j);
        double want = (1.0 / a) * std::exp(-M_PI * (x * x + y * y) / a);
        err = std::max(err, std::abs(ft[i] * ft[j] - Complex(want)));
      }
  }
  return err;
}

}  // namespace fho
