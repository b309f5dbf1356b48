#pragma once

namespace fho {

// Macdonald function K_nu(z) through its integral form
//   K_nu(z) = 2^{-nu-1} z^nu int_0^inf exp(-y - z^2/4y) y^{-nu-1} dy,
// evaluated by adaptive Gauss-Legendre on the log-transformed axis, split
// at the saddle y = z/2. Valid for |nu| <= 20 and 0 < z <= 100.
double macdonald_k(double nu, double z);

}  // namespace fho
