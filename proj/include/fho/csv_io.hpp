#pragma once

#include <memory>
#include <string>

#include "fho/grid.hpp"
#include "fho/hermite.hpp"
#include "fho/nonlinear.hpp"
#include "fho/norms.hpp"

namespace fho {

// Deterministic float text: 17 significant digits, '.' decimal point.
std::string format_double(double v);

// Grid samples: header "x,re,im" (d=1) or "x,y,re,im" (d=2), row-major.
void write_grid_field(const GridField& f, const std::string& path);
GridField read_grid_field(const std::string& path);

// Coefficients: header "alpha1,re,im" or "alpha1,alpha2,re,im", alpha1-major.
void write_spectral_field(const SpectralField& f, const std::string& path);
SpectralField read_spectral_field(const std::string& path,
                                  std::shared_ptr<const HermiteBasis> basis);

// "t,ratio" rows.
void write_decay_scan(const DecayScanResult& r, const std::string& path);

// "t,lp_norm,weighted_norm,contraction_factor" rows.
void write_trajectory(const SolveTrajectory& t, const std::string& path);

}  // namespace fho
