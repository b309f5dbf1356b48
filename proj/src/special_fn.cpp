#include "fho/special_fn.hpp"

#include <cmath>
#include <string>

#include "fho/errors.hpp"

namespace fho {

namespace {

// 16-point Gauss-Legendre on [-1, 1].
constexpr int kGL = 16;
constexpr double kGLNode[kGL] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
constexpr double kGLWeight[kGL] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

// Integrand after y = exp(tau):
//   exp(-e^tau - (z^2/4) e^{-tau}) e^{-nu tau}.
double integrand(double tau, double nu, double z2over4) {
  double y = std::exp(tau);
  return std::exp(-y - z2over4 / y - nu * tau);
}

double composite_gl(double lo, double hi, int panels, double nu, double z2over4) {
  double s = 0.0;
  double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    double a = lo + p * h;
    double mid = a + 0.5 * h;
    double half = 0.5 * h;
    double acc = 0.0;
    for (int i = 0; i < kGL; ++i)
      acc += kGLWeight[i] * integrand(mid + half * kGLNode[i], nu, z2over4);
    s += acc * half;
  }
  return s;
}

// Panel-doubling until successive values agree to 1e-10 relative.
double adaptive_segment(double lo, double hi, double nu, double z2over4) {
  if (hi <= lo) return 0.0;
  double prev = composite_gl(lo, hi, 4, nu, z2over4);
  for (int panels = 8; panels <= 1024; panels *= 2) {
    double cur = composite_gl(lo, hi, panels, nu, z2over4);
    if (std::abs(cur - prev) <= 1e-10 * std::abs(cur) + 1e-300) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace

double macdonald_k(double nu, double z) {
  if (std::abs(nu) > 20.0)
    throw precondition_error("macdonald_k: |nu| must be <= 20, got " + std::to_string(nu));
  if (!(z > 0.0) || z > 100.0)
    throw precondition_error("macdonald_k: z must lie in (0, 100], got " + std::to_string(z));

  double z2over4 = 0.25 * z * z;
  double tau_saddle = std::log(0.5 * z);

  // Bracket where the exponent has dropped ~46 e-folds below the saddle:
  // right end from e^tau, left end from (z^2/4) e^{-tau} and the nu drift.
  double drop = 46.0 + 2.0 * std::abs(nu) * 5.0;
  double tau_hi = std::max(tau_saddle, 0.0) + 2.0;
  while (std::exp(tau_hi) - std::abs(nu) * tau_hi < std::exp(tau_saddle) + drop)
    tau_hi += 1.0;
  double tau_lo = tau_saddle;
  while (z2over4 * std::exp(-tau_lo) - nu * tau_lo <
         z2over4 * std::exp(-tau_saddle) + drop)
    tau_lo -= 1.0;
  if (tau_hi < tau_saddle + 2.0) tau_hi = tau_saddle + 2.0;

  double integral = adaptive_segment(tau_lo, tau_saddle, nu, z2over4) +
                    adaptive_segment(tau_saddle, tau_hi, nu, z2over4);
  // K_nu = 2^{-nu-1} z^nu * integral; fold the powers in log space so
  // moderate nu with small z cannot overflow intermediates.
  return std::exp(-(nu + 1.0) * std::log(2.0) + nu * std::log(z)) * integral;
}

}  // namespace fho
