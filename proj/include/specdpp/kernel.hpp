#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "specdpp/chart.hpp"
#include "specdpp/spectrum.hpp"

namespace specdpp {

/// E_lambda(x, y) = sum_i phi_i(x) phi_i(y).
double projection_kernel(const SpectralBasis& basis, const ManifoldPoint& x,
                         const ManifoldPoint& y);

/// lambda^-m E_lambda(exp_p(u/lambda), exp_p(v/lambda)), zero when either
/// argument leaves the open window. The reference-measure density is not
/// included; see TangentChart::reference_density.
double scaled_kernel(const SpectralBasis& basis, const TangentChart& chart,
                     std::span<const double> u, std::span<const double> v);

/// (2pi)^{-m/2} F_{m/2}(|u - v|), the Bessel kernel on R^m (sinc for m = 1).
double universal_kernel(int m, std::span<const double> u, std::span<const double> v);

/// Symmetric positive-definite matrix, used for the inverse metric g^{ij}.
class SPDMatrix {
 public:
  /// Throws DomainError unless symmetric within 1e-12 with positive spectrum.
  explicit SPDMatrix(Eigen::MatrixXd m);
  static SPDMatrix identity(int order) {
    return SPDMatrix(Eigen::MatrixXd::Identity(order, order));
  }

  int order() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  /// Positive-definite square root via the eigendecomposition.
  Eigen::MatrixXd sqrt() const;
  double determinant() const { return eigenvalues_.prod(); }

 private:
  Eigen::MatrixXd matrix_;
  Eigen::MatrixXd eigenvectors_;
  Eigen::VectorXd eigenvalues_;
};

/// |eta|_g = |G^{1/2} eta| for the inverse-metric pairing G.
double metric_norm(const SPDMatrix& g_inverse, std::span<const double> eta);

/// F_{m/2}(|eta|_g): the normalised Fourier transform of the unit g-ball.
double fourier_ball(const SPDMatrix& g_inverse, std::span<const double> eta);
/// F_{(m-2)/2}(|eta|_g): the same for the unit g-sphere; m >= 2.
double fourier_sphere(const SPDMatrix& g_inverse, std::span<const double> eta);

enum class KernelKind { Scaled, Universal };

/// Scaled chart kernel bound to a basis and chart. Caches nothing; the
/// tabulation routines evaluate features once per grid point.
struct ScaledKernel {
  const SpectralBasis* basis;
  const TangentChart* chart;

  double operator()(std::span<const double> u, std::span<const double> v) const {
    return scaled_kernel(*basis, *chart, u, v);
  }
};

struct UniversalKernel {
  int m;

  double operator()(std::span<const double> u, std::span<const double> v) const {
    return universal_kernel(m, u, v);
  }
};

struct KernelTable {
  KernelKind kind = KernelKind::Universal;
  int dimension = 0;
  double lambda = 0.0;  // 0 for the universal kernel
  std::string manifold;
  ManifoldPoint base;
  std::vector<ChartPoint> u;
  std::vector<ChartPoint> v;
  Eigen::MatrixXd values;  // values(i, j) = K(u_i, v_j)
};

/// Dense kernel tables. The plain versions parallelise over grid points with
/// OpenMP; the *_serial versions are the reference loops they are tested
/// against and must agree bit for bit.
KernelTable tabulate(const ScaledKernel& kernel, const std::vector<ChartPoint>& u,
                     const std::vector<ChartPoint>& v);
KernelTable tabulate(const UniversalKernel& kernel, const std::vector<ChartPoint>& u,
                     const std::vector<ChartPoint>& v);
KernelTable tabulate_serial(const ScaledKernel& kernel, const std::vector<ChartPoint>& u,
                            const std::vector<ChartPoint>& v);
KernelTable tabulate_serial(const UniversalKernel& kernel, const std::vector<ChartPoint>& u,
                            const std::vector<ChartPoint>& v);

/// Lattice points step * Z^m with |u| <= radius, in lexicographic order.
std::vector<ChartPoint> chart_grid(int m, double radius, double step);

}  // namespace specdpp
