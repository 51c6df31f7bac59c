#include "specdpp/chart.hpp"

#include <cmath>

#include "specdpp/errors.hpp"

namespace specdpp {

TangentChart::TangentChart(const ManifoldModel& model, const ManifoldPoint& base, double epsilon,
                           double lambda)
    : model_(model), base_(base), epsilon_(epsilon), lambda_(lambda) {
  validate_point(model, base);
  if (!(epsilon > 0.0 && epsilon < model.injectivity_radius())) {
    throw DomainError("chart epsilon must lie in (0, injectivity radius)");
  }
  if (!(lambda > 0.0)) throw DomainError("chart scale lambda must be positive");
  frame_ = orthonormal_frame(model, base);
}

double euclidean_norm(std::span<const double> u) {
  double sq = 0.0;
  for (double x : u) sq += x * x;
  return std::sqrt(sq);
}

bool TangentChart::in_window(std::span<const double> u) const {
  return euclidean_norm(u) / lambda_ < epsilon_;
}

ManifoldPoint TangentChart::to_manifold(std::span<const double> u) const {
  if (u.size() != static_cast<std::size_t>(dimension())) {
    throw DomainError("chart coordinate has wrong dimension");
  }
  TangentVector v{base_, std::vector<double>(u.begin(), u.end())};
  for (double& c : v.components) c /= lambda_;
  return exp_map(model_, v);
}

ChartPoint TangentChart::from_manifold(const ManifoldPoint& x) const {
  auto v = log_map(model_, base_, x);
  for (double& c : v.components) c *= lambda_;
  return std::move(v.components);
}

double TangentChart::reference_density(std::span<const double> u) const {
  if (model_.kind() != ManifoldKind::Sphere2) return 1.0;
  const double r = euclidean_norm(u) / lambda_;
  return r == 0.0 ? 1.0 : std::sin(r) / r;
}

double scaled_distance(const TangentChart& chart, std::span<const double> u,
                       std::span<const double> v) {
  return chart.lambda() *
         distance(chart.model(), chart.to_manifold(u), chart.to_manifold(v));
}

ManifoldPoint default_base_point(const ManifoldModel& model) {
  ManifoldPoint p;
  if (model.kind() == ManifoldKind::Sphere2) p.coords = {0.0, 0.0, 1.0};
  return p;
}

}  // namespace specdpp
