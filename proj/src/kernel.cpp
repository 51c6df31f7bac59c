#include "specdpp/kernel.hpp"

#include <cmath>
#include <numbers>
#include <optional>

#include "specdpp/errors.hpp"
#include "specdpp/parallel.hpp"
#include "specdpp/specfun.hpp"

namespace specdpp {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Features of exp_p(u/lambda), or nullopt outside the window.
std::optional<std::vector<double>> chart_features(const SpectralBasis& basis,
                                                  const TangentChart& chart,
                                                  std::span<const double> u) {
  if (!chart.in_window(u)) return std::nullopt;
  std::vector<double> f(basis.size());
  basis.evaluate(chart.to_manifold(u), f);
  return f;
}

double scaled_value(const std::optional<std::vector<double>>& fu,
                    const std::optional<std::vector<double>>& fv, double lambda, int m) {
  if (!fu || !fv) return 0.0;
  return dot(*fu, *fv) / std::pow(lambda, m);
}

void check_grid(const std::vector<ChartPoint>& u, const std::vector<ChartPoint>& v, int m) {
  if (u.empty() || v.empty()) throw DomainError("tabulate: empty grid");
  for (const auto* list : {&u, &v}) {
    for (const auto& p : *list) {
      if (p.size() != static_cast<std::size_t>(m)) {
        throw DomainError("tabulate: grid point has wrong dimension");
      }
    }
  }
}

KernelTable table_header(KernelKind kind, int m, const std::vector<ChartPoint>& u,
                         const std::vector<ChartPoint>& v) {
  KernelTable t;
  t.kind = kind;
  t.dimension = m;
  t.u = u;
  t.v = v;
  t.values.resize(static_cast<Eigen::Index>(u.size()), static_cast<Eigen::Index>(v.size()));
  return t;
}

KernelTable tabulate_scaled(const ScaledKernel& kernel, const std::vector<ChartPoint>& u,
                            const std::vector<ChartPoint>& v, bool parallel) {
  const TangentChart& chart = *kernel.chart;
  const SpectralBasis& basis = *kernel.basis;
  const int m = chart.dimension();
  check_grid(u, v, m);
  KernelTable t = table_header(KernelKind::Scaled, m, u, v);
  t.lambda = chart.lambda();
  t.manifold = chart.model().name();
  t.base = chart.base();

  std::vector<std::optional<std::vector<double>>> fu(u.size()), fv(v.size());
  const auto nu = static_cast<std::int64_t>(u.size());
  const auto nv = static_cast<std::int64_t>(v.size());
  parallel_for(nu, parallel, [&](std::int64_t i) { fu[i] = chart_features(basis, chart, u[i]); });
  parallel_for(nv, parallel, [&](std::int64_t j) { fv[j] = chart_features(basis, chart, v[j]); });
  parallel_for(nu, parallel, [&](std::int64_t i) {
    for (std::int64_t j = 0; j < nv; ++j) t.values(i, j) = scaled_value(fu[i], fv[j], t.lambda, m);
  });
  return t;
}

KernelTable tabulate_universal(const UniversalKernel& kernel, const std::vector<ChartPoint>& u,
                               const std::vector<ChartPoint>& v, bool parallel) {
  check_grid(u, v, kernel.m);
  KernelTable t = table_header(KernelKind::Universal, kernel.m, u, v);
  const auto nv = static_cast<std::int64_t>(v.size());
  parallel_for(static_cast<std::int64_t>(u.size()), parallel, [&](std::int64_t i) {
    for (std::int64_t j = 0; j < nv; ++j) t.values(i, j) = kernel(u[i], v[j]);
  });
  return t;
}

}  // namespace

double projection_kernel(const SpectralBasis& basis, const ManifoldPoint& x,
                         const ManifoldPoint& y) {
  const auto fx = eval_basis(basis, x);
  const auto fy = eval_basis(basis, y);
  return dot(fx, fy);
}

double scaled_kernel(const SpectralBasis& basis, const TangentChart& chart,
                     std::span<const double> u, std::span<const double> v) {
  return scaled_value(chart_features(basis, chart, u), chart_features(basis, chart, v),
                      chart.lambda(), chart.dimension());
}

double universal_kernel(int m, std::span<const double> u, std::span<const double> v) {
  if (m < 1 || m > 8) throw DomainError("universal_kernel: dimension must be in 1..8");
  if (u.size() != static_cast<std::size_t>(m) || v.size() != static_cast<std::size_t>(m)) {
    throw DomainError("universal_kernel: dimension mismatch");
  }
  double sq = 0.0;
  for (int i = 0; i < m; ++i) sq += (u[i] - v[i]) * (u[i] - v[i]);
  return std::pow(2.0 * std::numbers::pi, -0.5 * m) * f_alpha(BesselOrder::half(m), std::sqrt(sq));
}

SPDMatrix::SPDMatrix(Eigen::MatrixXd m) : matrix_(std::move(m)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw DomainError("SPD matrix must be square and non-empty");
  }
  if ((matrix_ - matrix_.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw DomainError("SPD matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix_);
  if (solver.info() != Eigen::Success || solver.eigenvalues().minCoeff() <= 0.0) {
    throw DomainError("matrix is not positive definite");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

Eigen::MatrixXd SPDMatrix::sqrt() const {
  return eigenvectors_ * eigenvalues_.cwiseSqrt().asDiagonal() * eigenvectors_.transpose();
}

double metric_norm(const SPDMatrix& g_inverse, std::span<const double> eta) {
  if (eta.size() != static_cast<std::size_t>(g_inverse.order())) {
    throw DomainError("metric_norm: dimension mismatch");
  }
  const Eigen::Map<const Eigen::VectorXd> e(eta.data(), static_cast<Eigen::Index>(eta.size()));
  return (g_inverse.sqrt() * e).norm();
}

double fourier_ball(const SPDMatrix& g_inverse, std::span<const double> eta) {
  return f_alpha(BesselOrder::half(g_inverse.order()), metric_norm(g_inverse, eta));
}

double fourier_sphere(const SPDMatrix& g_inverse, std::span<const double> eta) {
  if (g_inverse.order() < 2) throw DomainError("fourier_sphere needs dimension >= 2");
  return f_alpha(BesselOrder::half(g_inverse.order() - 2), metric_norm(g_inverse, eta));
}

KernelTable tabulate(const ScaledKernel& kernel, const std::vector<ChartPoint>& u,
                     const std::vector<ChartPoint>& v) {
  return tabulate_scaled(kernel, u, v, true);
}

KernelTable tabulate(const UniversalKernel& kernel, const std::vector<ChartPoint>& u,
                     const std::vector<ChartPoint>& v) {
  return tabulate_universal(kernel, u, v, true);
}

KernelTable tabulate_serial(const ScaledKernel& kernel, const std::vector<ChartPoint>& u,
                            const std::vector<ChartPoint>& v) {
  return tabulate_scaled(kernel, u, v, false);
}

KernelTable tabulate_serial(const UniversalKernel& kernel, const std::vector<ChartPoint>& u,
                            const std::vector<ChartPoint>& v) {
  return tabulate_universal(kernel, u, v, false);
}

std::vector<ChartPoint> chart_grid(int m, double radius, double step) {
  if (m < 1 || !(radius >= 0.0) || !(step > 0.0)) throw DomainError("chart_grid: bad radius or step");
  const int n = static_cast<int>(std::floor(radius / step + 1e-9));
  std::vector<ChartPoint> grid;
  std::vector<int> k(m, -n);
  for (;;) {
    ChartPoint p(m);
    for (int i = 0; i < m; ++i) p[i] = k[i] * step;
    if (euclidean_norm(p) <= radius * (1.0 + 1e-12)) grid.push_back(std::move(p));
    int i = m - 1;
    while (i >= 0 && k[i] == n) k[i--] = -n;
    if (i < 0) break;
    ++k[i];
  }
  return grid;
}

}  // namespace specdpp
