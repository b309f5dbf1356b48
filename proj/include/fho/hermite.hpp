#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "fho/grid.hpp"

namespace fho {

// Degrees beyond this are refused outright: the recurrence itself stays
// stable but the grids required to resolve h_k grow past what the rest of
// the pipeline is sized for.
inline constexpr int kMaxHermiteDegree = 512;

// Normalized Hermite function h_k(x), L^2-orthonormal, via the stable
// three-term recurrence seeded by h_0 = pi^{-1/4} exp(-x^2/2).
double eval_hermite_1d(int k, double x);

// All of h_0..h_kmax at one point (single recurrence pass).
std::vector<double> hermite_column(int kmax, double x);

// Eigenvalue of H = -Delta + |x|^2 on the total-degree-k eigenspace.
inline double eigenvalue_of(int k, int dim) { return 2.0 * k + dim; }

// Precomputed 1D Hermite tables over Gauss-Hermite quadrature nodes and a
// uniform evaluation grid. Dimension d = 2 is handled by tensor products
// of the same 1D tables.
class HermiteBasis {
 public:
  // Builds tables for degrees 0..max_degree. The quadrature uses
  // 2*(max_degree+1) Gauss-Hermite nodes: enough for exact h_j*h_k
  // integration plus headroom for de-aliasing cubic nonlinearities.
  static HermiteBasis build(int dim, int max_degree, const UniformGrid& grid);
  static HermiteBasis build(int dim, int max_degree);

  // Default norm-evaluation grid: L = max(10, sqrt(2N+1) + 6) covers the
  // oscillation region of h_N plus Gaussian tails, n = 20L+1 per axis.
  static UniformGrid default_grid(int dim, int max_degree);

  int dim() const { return dim_; }
  int max_degree() const { return max_degree_; }
  const UniformGrid& grid() const { return grid_; }
  const std::vector<double>& quad_nodes() const { return quad_nodes_; }
  // Weights already carry the e^{x^2} compensation: sum_i w_i f(x_i)
  // approximates the plain integral of f, exactly when f is a polynomial
  // of degree <= 2*nodes-1 times e^{-x^2}.
  const std::vector<double>& quad_weights() const { return quad_weights_; }

  // hermite_quad(k)[i] = h_k(quad_nodes[i]); hermite_grid(k)[j] = h_k(x_j).
  const double* hermite_quad(int k) const { return table_quad_.data() + static_cast<std::size_t>(k) * quad_nodes_.size(); }
  const double* hermite_grid(int k) const { return table_grid_.data() + static_cast<std::size_t>(k) * grid_.points_per_axis; }

  std::size_t coeff_count() const {
    std::size_t m = static_cast<std::size_t>(max_degree_) + 1;
    return dim_ == 1 ? m : m * m;
  }

 private:
  int dim_ = 1;
  int max_degree_ = 0;
  UniformGrid grid_;
  std::vector<double> quad_nodes_;
  std::vector<double> quad_weights_;
  std::vector<double> table_quad_;  // (N+1) x nodes, degree-major
  std::vector<double> table_grid_;  // (N+1) x points_per_axis
};

// Hermite expansion coefficients <f, Phi_alpha> on the truncated index set
// 0 <= alpha_i <= N. In d = 2 the layout is alpha1-major:
// coeffs[alpha1 * (N+1) + alpha2].
struct SpectralField {
  std::shared_ptr<const HermiteBasis> basis;
  std::vector<Complex> coeffs;

  SpectralField() = default;
  explicit SpectralField(std::shared_ptr<const HermiteBasis> b)
      : basis(std::move(b)), coeffs(basis->coeff_count()) {}

  std::size_t index(int a1, int a2 = 0) const {
    std::size_t m = static_cast<std::size_t>(basis->max_degree()) + 1;
    return basis->dim() == 1 ? static_cast<std::size_t>(a1)
                             : static_cast<std::size_t>(a1) * m + a2;
  }
};

// Gauss-Hermite projection of a callable sampled at the quadrature nodes.
SpectralField project(const std::shared_ptr<const HermiteBasis>& basis,
                      const std::function<Complex(double)>& f);
SpectralField project(const std::shared_ptr<const HermiteBasis>& basis,
                      const std::function<Complex(double, double)>& f);

// Trapezoid projection of uniform-grid samples (the grid must match the
// basis grid). Accurate for fields resolved by the grid; the quadrature
// form above is the exact path for polynomial-times-Gaussian data.
SpectralField project(const GridField& f,
                      const std::shared_ptr<const HermiteBasis>& basis);

// Pointwise synthesis sum over the basis grid; exact linear inverse of
// project on the span of the basis.
GridField synthesize(const SpectralField& c);

// Values of the expansion at the quadrature nodes (d=1: nodes, d=2:
// node-major tensor grid). Used by the pseudo-spectral nonlinearity.
std::vector<Complex> synthesize_at_quad(const SpectralField& c);
SpectralField project_quad_values(const std::shared_ptr<const HermiteBasis>& basis,
                                  const std::vector<Complex>& values);

}  // namespace fho
