#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "fho/errors.hpp"

namespace fho {

using Complex = std::complex<double>;

// Uniform grid on [-L, L]^d used for L^p norms and pointwise nonlinearities.
// Points per axis: x_j = -L + j * spacing, j = 0..n-1, symmetric about 0.
struct UniformGrid {
  int dim = 1;
  double half_width = 10.0;
  int points_per_axis = 201;

  UniformGrid() = default;
  UniformGrid(int d, double L, int n) : dim(d), half_width(L), points_per_axis(n) {
    if (d < 1 || d > 2) throw precondition_error("UniformGrid: dim must be 1 or 2");
    if (L <= 0.0) throw precondition_error("UniformGrid: half_width must be positive");
    if (n < 2) throw precondition_error("UniformGrid: need at least 2 points per axis");
  }

  double spacing() const { return 2.0 * half_width / (points_per_axis - 1); }

  std::size_t size() const {
    std::size_t n = static_cast<std::size_t>(points_per_axis);
    return dim == 1 ? n : n * n;
  }

  double axis_point(int j) const { return -half_width + j * spacing(); }

  std::vector<double> axis() const {
    std::vector<double> xs(points_per_axis);
    for (int j = 0; j < points_per_axis; ++j) xs[j] = axis_point(j);
    return xs;
  }

  // Trapezoid quadrature weight along one axis.
  double axis_weight(int j) const {
    double h = spacing();
    return (j == 0 || j == points_per_axis - 1) ? 0.5 * h : h;
  }

  bool operator==(const UniformGrid& o) const {
    return dim == o.dim && half_width == o.half_width &&
           points_per_axis == o.points_per_axis;
  }
};

// Function samples on a UniformGrid, row-major over axes in d = 2
// (index = i * n + j with x = axis[i], y = axis[j]).
struct GridField {
  UniformGrid grid;
  std::vector<Complex> values;

  GridField() = default;
  explicit GridField(const UniformGrid& g) : grid(g), values(g.size()) {}
  GridField(const UniformGrid& g, std::vector<Complex> v)
      : grid(g), values(std::move(v)) {
    if (values.size() != g.size())
      throw precondition_error("GridField: value count does not match grid");
  }
};

}  // namespace fho
