#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "specdpp/chart.hpp"
#include "specdpp/kernel.hpp"
#include "specdpp/quadrature.hpp"
#include "specdpp/report.hpp"
#include "specdpp/sampler.hpp"

namespace specdpp {

/// Kernel on raw coordinates (manifold angles or chart coordinates).
using CoordinateKernel =
    std::function<double(std::span<const double>, std::span<const double>)>;
using TestFunction = std::function<double(std::span<const double>)>;
using Region = std::function<bool(std::span<const double>)>;

/// E_lambda as a function of raw manifold coordinates. Angles outside
/// [0, 2pi) are wrapped, so quadrature nodes may run past 2pi.
CoordinateKernel manifold_kernel(const SpectralBasis& basis);
CoordinateKernel universal_coordinate_kernel(int m);

// ---------------------------------------------------------------------------
// Correlation functions

/// rho_n(x_1..x_n) = det(K(x_i, x_j)).
template <class Point, class Kernel>
double correlation_fn(const Kernel& kernel, std::span<const Point> points) {
  const auto n = static_cast<Eigen::Index>(points.size());
  if (n < 1) throw std::domain_error("correlation_fn needs at least one point");
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) gram(i, j) = kernel(points[i], points[j]);
  }
  return gram.partialPivLu().determinant();
}

// ---------------------------------------------------------------------------
// Fits

/// Ordinary least squares of log y on log x. Needs at least two points with
/// positive coordinates; the half-width is infinite for exactly two.
SlopeFit fit_loglog(std::span<const double> x, std::span<const double> y);

// ---------------------------------------------------------------------------
// Weyl law

struct WeylRow {
  double lambda = 0.0;
  std::int64_t count = 0;
  double leading = 0.0;
  double ratio = 0.0;
  double residual = 0.0;
};

struct WeylResult {
  std::string manifold;
  int dimension = 0;
  std::vector<WeylRow> rows;
  std::optional<SlopeFit> residual_slope;
  std::vector<std::string> notices;

  EstimatorReport report() const;
};

/// lambda^m |B_1| vol(M) / (2pi)^m.
double weyl_leading_term(const ManifoldModel& model, double lambda);

/// N(lambda), the leading term, their ratio and residual for each lambda,
/// plus the log-log slope of |residual| when at least three non-zero
/// residuals are available.
WeylResult weyl_check(const ManifoldModel& model, std::span<const double> lambdas);

// ---------------------------------------------------------------------------
// Kernel convergence

struct ConvergenceRow {
  double epsilon = 0.0;
  double lambda = 0.0;
  std::size_t basis_size = 0;
  double sup_difference = 0.0;       // max over grid pairs |K_scaled - K_universal|
  double diagonal_difference = 0.0;  // |K_scaled(0,0) - K_universal(0,0)|
};

struct ConvergenceResult {
  std::string manifold;
  ManifoldPoint base;
  std::size_t grid_size = 0;
  std::vector<double> epsilons;
  std::vector<ConvergenceRow> rows;  // epsilon-major, lambdas in input order
  std::vector<SlopeFit> slopes;      // one per epsilon when >= 4 lambdas
  double epsilon_disagreement = 0.0;  // max |D_eps1(lambda) - D_eps2(lambda)|
  std::vector<std::string> notices;

  /// D(lambda) for epsilon index k.
  std::vector<double> sup_differences(std::size_t k) const;
  EstimatorReport report() const;
};

/// Uniform distance between the scaled kernel and the universal kernel over
/// grid x grid for each lambda and epsilon. Throws DomainError when the grid
/// leaves the chart window at the smallest lambda.
ConvergenceResult kernel_convergence(const ManifoldModel& model, const ManifoldPoint& base,
                                     std::span<const double> epsilons,
                                     std::span<const double> lambdas,
                                     const std::vector<ChartPoint>& grid);

// ---------------------------------------------------------------------------
// Intensity

/// Partition of the manifold or of a chart ball into bins with known
/// reference measure.
class Binning {
 public:
  /// Circle: `divisions` equal arcs. Torus: divisions^m equal boxes.
  /// Sphere: `divisions` equal-area latitude bands times `divisions` sectors.
  static Binning manifold(const ManifoldModel& model, int divisions);
  /// Radial shells edges[k] <= |u| < edges[k+1] in chart coordinates; the
  /// measure of each shell includes the chart's reference density.
  static Binning chart_shells(const TangentChart& chart, std::vector<double> edges);

  Space space() const { return space_; }
  std::size_t size() const { return measures_.size(); }
  double measure(std::size_t b) const { return measures_[b]; }
  /// Bin index of a point, or -1 outside every bin.
  int locate(std::span<const double> coords) const;
  const std::vector<double>& edges() const { return edges_; }

 private:
  Binning() = default;
  Space space_ = Space::Manifold;
  ManifoldModel model_ = ManifoldModel::circle();
  int divisions_ = 0;
  std::vector<double> edges_;
  std::vector<double> measures_;
};

struct IntensityResult {
  Space space = Space::Manifold;
  std::size_t replicas = 0;
  std::vector<double> measure;
  std::vector<double> intensity;
  std::vector<double> se;
  std::vector<bool> empty;

  EstimatorReport report() const;
};

/// Mean count per bin divided by the bin measure, with standard errors from
/// the replica variance. Needs at least 100 replicas.
IntensityResult estimate_intensity(std::span<const PointConfiguration> configs,
                                   const Binning& bins);

// ---------------------------------------------------------------------------
// Pair correlation

struct PcfResult {
  int dimension = 0;
  double half_width = 0.0;
  std::size_t replicas = 0;
  double intensity = 0.0;  // estimated rho_1 in the window
  std::vector<double> edges;
  std::vector<double> g;
  std::vector<double> se;
  std::vector<bool> flagged;  // bin reaches beyond the window diameter
  std::vector<double> truth;  // finite-lambda determinant truth, when supplied
  std::vector<double> limit;  // 1 - (F(r)/F(0))^2 bin averages

  EstimatorReport report() const;
};

/// Translation-corrected estimate of g_2 on radial bins from chart
/// configurations restricted to the box [-a, a]^m. Each ordered pair at
/// offset d contributes 1 / |W cap (W + d)|. Needs at least 1000 replicas.
PcfResult estimate_pcf(std::span<const PointConfiguration> configs, int m, double half_width,
                       std::span<const double> edges);

/// Bin averages (weight r^{m-1}, averaged over directions) of
/// 1 - (K(0, d) / K(0, 0))^2 for the scaled kernel at the chart origin.
std::vector<double> pcf_truth(const SpectralBasis& basis, const TangentChart& chart,
                              std::span<const double> edges);
/// Bin averages of 1 - (F_{m/2}(r) / F_{m/2}(0))^2.
std::vector<double> pcf_limit(int m, std::span<const double> edges);

// ---------------------------------------------------------------------------
// Fredholm determinants and Laplace functionals

/// det(I + (h - 1) K 1_A) by Nystrom discretisation on the rule's nodes:
/// M_ij = delta_ij + (h(x_i) - 1) sqrt(w_i) K(x_i, x_j) sqrt(w_j), with the
/// determinant from a pivoted LU factorisation. Order must be at least 2.
double fredholm_det(const CoordinateKernel& kernel, const TestFunction& h,
                    const QuadratureRule& quad);

/// Gap probability: h = 0 on the rule's domain.
double gap_probability(const CoordinateKernel& kernel, const QuadratureRule& quad);

/// Mean of prod_{x in config} h(x) with its standard error (>= 1000 replicas).
Estimate laplace_functional_mc(std::span<const PointConfiguration> configs, const TestFunction& h);
/// Fraction of configurations with no point in the region.
Estimate empty_prob_mc(std::span<const PointConfiguration> configs, const Region& region);

/// Test functions on the circle parameterised by an arc [start, start + length].
struct ArcTestFunction {
  enum class Shape { Indicator, Bump, Oscillating };

  Shape shape = Shape::Indicator;
  double start = 0.0;
  double length = 0.5;
  double depth = 1.0;  // h = 1 - depth * profile inside the arc

  /// Position inside the arc in [0, length), or nullopt outside.
  std::optional<double> offset(double theta) const;
  double operator()(std::span<const double> coords) const;
  bool contains(std::span<const double> coords) const { return offset(coords[0]).has_value(); }
};

}  // namespace specdpp
