#pragma once

#include "fho/grid.hpp"
#include "fho/hermite.hpp"
#include "fho/subordinator.hpp"

namespace fho {

enum class Route { spectral, mehler, subordination };

Route route_from_string(const std::string& s);
const char* route_name(Route r);

// One application of e^{-t H^beta}. The kernel routes are restricted:
// Mehler requires beta = 1, subordination requires beta = 1/2. The
// spectral route is exact for every beta > 0.
struct PropagatorSpec {
  double beta = 1.0;
  double t = 0.0;
  Route route = Route::spectral;

  void validate() const;
};

// Exact route: multiply coefficient alpha by exp(-t (2|alpha|+d)^beta).
SpectralField apply_spectral(const SpectralField& f, double beta, double t);

// beta = 1/2 via Bochner subordination of the beta = 1 semigroup,
// evaluated as a coefficient multiplier over the log-spaced s-rule.
SpectralField apply_subordination(const SpectralField& f, double t);

// beta = 1 on the grid through the Mehler kernel, written as a Gaussian
// convolution sandwiched between e^{-(tanh t / 2)|x|^2} factors. The
// normalization constant is calibrated once against the ground state.
class MehlerApplicator {
 public:
  explicit MehlerApplicator(const UniformGrid& grid);

  GridField apply(const GridField& f, double t) const;
  double calibration() const { return calib_; }

 private:
  GridField apply_raw(const GridField& f, double t, double constant) const;

  UniformGrid grid_;
  double calib_ = 1.0;
};

// Health check for the convolution machinery: transforms exp(-pi a |y|^2)
// on the grid and returns the sup error against the closed form
// a^{-d/2} exp(-pi |x|^2 / a).
double gaussian_fourier_selfcheck(double a, const UniformGrid& grid);

}  // namespace fho
