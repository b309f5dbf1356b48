#include "fho/hermite.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "fho/simd.hpp"

namespace fho {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_degree(int k) {
  if (k < 0) throw precondition_error("hermite: degree must be nonnegative");
  if (k > kMaxHermiteDegree)
    throw precondition_error("hermite: unsupported degree " + std::to_string(k) +
                             " (cap " + std::to_string(kMaxHermiteDegree) + ")");
}

// Gauss-Hermite nodes for n-point rule: eigenvalues of the Jacobi matrix
// for the weight e^{-x^2} (diag 0, off-diag sqrt(k/2)).
std::vector<double> gauss_hermite_nodes(int n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double b = std::sqrt(0.5 * k);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
  std::vector<double> nodes(n);
  for (int i = 0; i < n; ++i) nodes[i] = es.eigenvalues()(i);
  return nodes;
}

// Internal: no degree cap. The public cap protects callers from grids
// they cannot afford; weight construction needs degrees up to 2N+1.
std::vector<double> hermite_column_unchecked(int kmax, double x) {
  std::vector<double> col(kmax + 1);
  double hm1 = 0.0;
  double h = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  col[0] = h;
  for (int j = 0; j < kmax; ++j) {
    double next = std::sqrt(2.0 / (j + 1)) * x * h - std::sqrt(double(j) / (j + 1)) * hm1;
    hm1 = h;
    h = next;
    col[j + 1] = h;
  }
  return col;
}

}  // namespace

double eval_hermite_1d(int k, double x) {
  check_degree(k);
  double hm1 = 0.0;
  double h = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  for (int j = 0; j < k; ++j) {
    double next = std::sqrt(2.0 / (j + 1)) * x * h - std::sqrt(double(j) / (j + 1)) * hm1;
    hm1 = h;
    h = next;
  }
  return h;
}

std::vector<double> hermite_column(int kmax, double x) {
  check_degree(kmax);
  std::vector<double> col(kmax + 1);
  double hm1 = 0.0;
  double h = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  col[0] = h;
  for (int j = 0; j < kmax; ++j) {
    double next = std::sqrt(2.0 / (j + 1)) * x * h - std::sqrt(double(j) / (j + 1)) * hm1;
    hm1 = h;
    h = next;
    col[j + 1] = h;
  }
  return col;
}

UniformGrid HermiteBasis::default_grid(int dim, int max_degree) {
  double L = std::max(10.0, std::sqrt(2.0 * max_degree + 1.0) + 6.0);
  int n = static_cast<int>(20.0 * L) + 1;
  return UniformGrid(dim, L, n);
}

HermiteBasis HermiteBasis::build(int dim, int max_degree) {
  return build(dim, max_degree, default_grid(dim, max_degree));
}

HermiteBasis HermiteBasis::build(int dim, int max_degree, const UniformGrid& grid) {
  if (dim < 1 || dim > 2)
    throw precondition_error("HermiteBasis: dim must be 1 or 2");
  check_degree(max_degree);
  if (grid.dim != dim)
    throw precondition_error("HermiteBasis: grid dimension mismatch");

  // The grid must reach past the oscillation region of every tabulated
  // degree; otherwise norm evaluation silently truncates mass.
  // h_N decays slowest, so checking the top degree suffices.
  if (std::abs(eval_hermite_1d(max_degree, grid.half_width)) > 1e-8) {
    throw precondition_error(
        "HermiteBasis: grid half_width " + std::to_string(grid.half_width) +
        " too small, h_" + std::to_string(max_degree) +
        " has not decayed at the boundary");
  }

  HermiteBasis b;
  b.dim_ = dim;
  b.max_degree_ = max_degree;
  b.grid_ = grid;

  int n_nodes = 2 * (max_degree + 1);
  b.quad_nodes_ = gauss_hermite_nodes(n_nodes);

  // Tables at nodes. Degrees up to 2N+1 are needed transiently for the
  // Christoffel weights below, but only 0..N are stored.
  std::size_t stride = b.quad_nodes_.size();
  b.table_quad_.resize(static_cast<std::size_t>(max_degree + 1) * stride);
  b.quad_weights_.resize(stride);
  for (std::size_t i = 0; i < stride; ++i) {
    std::vector<double> col = hermite_column_unchecked(n_nodes - 1, b.quad_nodes_[i]);
    for (int k = 0; k <= max_degree; ++k)
      b.table_quad_[static_cast<std::size_t>(k) * stride + i] = col[k];
    // Compensated Gauss-Hermite weight w_i e^{x_i^2} via the Christoffel
    // function of the orthonormal Hermite functions; stable at any degree
    // because it never forms e^{x^2} explicitly.
    double s = simd::dot(col.data(), col.data(), col.size());
    b.quad_weights_[i] = 1.0 / s;
  }

  std::size_t gstride = static_cast<std::size_t>(grid.points_per_axis);
  b.table_grid_.resize(static_cast<std::size_t>(max_degree + 1) * gstride);
  for (std::size_t j = 0; j < gstride; ++j) {
    std::vector<double> col = hermite_column(max_degree, grid.axis_point(static_cast<int>(j)));
    for (int k = 0; k <= max_degree; ++k)
      b.table_grid_[static_cast<std::size_t>(k) * gstride + j] = col[k];
  }
  return b;
}

namespace {

// c_k = sum_i w_i h_k(x_i) f_i over the quadrature nodes, all k <= N.
std::vector<Complex> contract_quad_1d(const HermiteBasis& b,
                                      const std::vector<Complex>& fvals) {
  std::size_t nn = b.quad_nodes().size();
  std::vector<double> re(nn), im(nn);
  for (std::size_t i = 0; i < nn; ++i) {
    re[i] = b.quad_weights()[i] * fvals[i].real();
    im[i] = b.quad_weights()[i] * fvals[i].imag();
  }
  std::vector<Complex> c(b.max_degree() + 1);
  for (int k = 0; k <= b.max_degree(); ++k) {
    const double* row = b.hermite_quad(k);
    c[k] = Complex(simd::dot(row, re.data(), nn), simd::dot(row, im.data(), nn));
  }
  return c;
}

}  // namespace

SpectralField project_quad_values(const std::shared_ptr<const HermiteBasis>& basis,
                                  const std::vector<Complex>& values) {
  const HermiteBasis& b = *basis;
  std::size_t nn = b.quad_nodes().size();
  SpectralField out(basis);
  int m = b.max_degree() + 1;
  if (b.dim() == 1) {
    if (values.size() != nn)
      throw precondition_error("project: sample count does not match quadrature");
    out.coeffs = contract_quad_1d(b, values);
    return out;
  }
  if (values.size() != nn * nn)
    throw precondition_error("project: sample count does not match quadrature");
  // First contract the second axis per node row, then the first axis.
  std::vector<Complex> partial(nn * static_cast<std::size_t>(m));
  std::vector<Complex> row(nn);
  for (std::size_t i = 0; i < nn; ++i) {
    for (std::size_t j = 0; j < nn; ++j) row[j] = values[i * nn + j];
    std::vector<Complex> ci = contract_quad_1d(b, row);
    for (int a2 = 0; a2 < m; ++a2) partial[static_cast<std::size_t>(a2) * nn + i] = ci[a2];
  }
  for (int a2 = 0; a2 < m; ++a2) {
    std::vector<Complex> col(partial.begin() + static_cast<std::size_t>(a2) * nn,
                             partial.begin() + static_cast<std::size_t>(a2 + 1) * nn);
    std::vector<Complex> ca = contract_quad_1d(b, col);
    for (int a1 = 0; a1 < m; ++a1) out.coeffs[out.index(a1, a2)] = ca[a1];
  }
  return out;
}

SpectralField project(const std::shared_ptr<const HermiteBasis>& basis,
                      const std::function<Complex(double)>& f) {
  if (basis->dim() != 1)
    throw precondition_error("project: 1D callable on a non-1D basis");
  std::vector<Complex> vals(basis->quad_nodes().size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = f(basis->quad_nodes()[i]);
  return project_quad_values(basis, vals);
}

SpectralField project(const std::shared_ptr<const HermiteBasis>& basis,
                      const std::function<Complex(double, double)>& f) {
  if (basis->dim() != 2)
    throw precondition_error("project: 2D callable on a non-2D basis");
  std::size_t nn = basis->quad_nodes().size();
  std::vector<Complex> vals(nn * nn);
  for (std::size_t i = 0; i < nn; ++i)
    for (std::size_t j = 0; j < nn; ++j)
      vals[i * nn + j] = f(basis->quad_nodes()[i], basis->quad_nodes()[j]);
  return project_quad_values(basis, vals);
}

SpectralField project(const GridField& f,
                      const std::shared_ptr<const HermiteBasis>& basis) {
  const HermiteBasis& b = *basis;
  if (!(f.grid == b.grid()))
    throw precondition_error("project: grid field does not match basis grid");
  SpectralField out(basis);
  int m = b.max_degree() + 1;
  std::size_t n = static_cast<std::size_t>(b.grid().points_per_axis);
  if (b.dim() == 1) {
    std::vector<double> re(n), im(n);
    for (std::size_t j = 0; j < n; ++j) {
      double w = b.grid().axis_weight(static_cast<int>(j));
      re[j] = w * f.values[j].real();
      im[j] = w * f.values[j].imag();
    }
    for (int k = 0; k < m; ++k) {
      const double* row = b.hermite_grid(k);
      out.coeffs[k] = Complex(simd::dot(row, re.data(), n), simd::dot(row, im.data(), n));
    }
    return out;
  }
  // d = 2: contract axis 2 then axis 1 with trapezoid weights.
  std::vector<Complex> partial(static_cast<std::size_t>(m) * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int a2 = 0; a2 < m; ++a2) {
      const double* row = b.hermite_grid(a2);
      Complex s = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        s += row[j] * b.grid().axis_weight(static_cast<int>(j)) * f.values[i * n + j];
      partial[static_cast<std::size_t>(a2) * n + i] = s;
    }
  }
  for (int a2 = 0; a2 < m; ++a2) {
    for (int a1 = 0; a1 < m; ++a1) {
      const double* row = b.hermite_grid(a1);
      Complex s = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        s += row[i] * b.grid().axis_weight(static_cast<int>(i)) *
             partial[static_cast<std::size_t>(a2) * n + i];
      out.coeffs[out.index(a1, a2)] = s;
    }
  }
  return out;
}

GridField synthesize(const SpectralField& c) {
  const HermiteBasis& b = *c.basis;
  std::size_t n = static_cast<std::size_t>(b.grid().points_per_axis);
  int m = b.max_degree() + 1;
  GridField out(b.grid());
  if (b.dim() == 1) {
    std::vector<double> re(n, 0.0), im(n, 0.0);
    for (int k = 0; k < m; ++k) {
      const double* row = b.hermite_grid(k);
      simd::axpy(re.data(), row, c.coeffs[k].real(), n);
      simd::axpy(im.data(), row, c.coeffs[k].imag(), n);
    }
    for (std::size_t j = 0; j < n; ++j) out.values[j] = Complex(re[j], im[j]);
    return out;
  }
  // d = 2: contract alpha2 against the grid, then alpha1.
  std::vector<Complex> partial(static_cast<std::size_t>(m) * n, Complex(0.0));
  for (int a1 = 0; a1 < m; ++a1) {
    for (int a2 = 0; a2 < m; ++a2) {
      Complex ck = c.coeffs[c.index(a1, a2)];
      if (ck == Complex(0.0)) continue;
      const double* row = b.hermite_grid(a2);
      for (std::size_t j = 0; j < n; ++j)
        partial[static_cast<std::size_t>(a1) * n + j] += ck * row[j];
    }
  }
  for (int a1 = 0; a1 < m; ++a1) {
    const double* row = b.hermite_grid(a1);
    for (std::size_t i = 0; i < n; ++i) {
      if (row[i] == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j)
        out.values[i * n + j] += row[i] * partial[static_cast<std::size_t>(a1) * n + j];
    }
  }
  return out;
}

std::vector<Complex> synthesize_at_quad(const SpectralField& c) {
  const HermiteBasis& b = *c.basis;
  std::size_t nn = b.quad_nodes().size();
  int m = b.max_degree() + 1;
  if (b.dim() == 1) {
    std::vector<double> re(nn, 0.0), im(nn, 0.0);
    for (int k = 0; k < m; ++k) {
      const double* row = b.hermite_quad(k);
      simd::axpy(re.data(), row, c.coeffs[k].real(), nn);
      simd::axpy(im.data(), row, c.coeffs[k].imag(), nn);
    }
    std::vector<Complex> out(nn);
    for (std::size_t i = 0; i < nn; ++i) out[i] = Complex(re[i], im[i]);
    return out;
  }
  std::vector<Complex> partial(static_cast<std::size_t>(m) * nn, Complex(0.0));
  for (int a1 = 0; a1 < m; ++a1)
    for (int a2 = 0; a2 < m; ++a2) {
      Complex ck = c.coeffs[c.index(a1, a2)];
      if (ck == Complex(0.0)) continue;
      const double* row = b.hermite_quad(a2);
      for (std::size_t j = 0; j < nn; ++j)
        partial[static_cast<std::size_t>(a1) * nn + j] += ck * row[j];
    }
  std::vector<Complex> out(nn * nn, Complex(0.0));
  for (int a1 = 0; a1 < m; ++a1) {
    const double* row = b.hermite_quad(a1);
    for (std::size_t i = 0; i < nn; ++i) {
      if (row[i] == 0.0) continue;
      for (std::size_t j = 0; j < nn; ++j)
        out[i * nn + j] += row[i] * partial[static_cast<std::size_t>(a1) * nn + j];
    }
  }
  return out;
}

}  // namespace fho
