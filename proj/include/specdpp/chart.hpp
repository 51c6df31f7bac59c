#pragma once

#include <span>
#include <vector>

#include "specdpp/manifold.hpp"

namespace specdpp {

/// Coordinates of a cotangent vector in the chart's orthonormal frame.
using ChartPoint = std::vector<double>;

/// Scaled exponential chart u -> exp_p(u / lambda) around a base point p,
/// restricted to the open ball |u| / lambda < epsilon.
///
/// The frame is orthonormal, so the metric at p is the identity in chart
/// coordinates and the limiting reference measure is Lebesgue measure.
class TangentChart {
 public:
  TangentChart(const ManifoldModel& model, const ManifoldPoint& base, double epsilon,
               double lambda);

  const ManifoldModel& model() const { return model_; }
  const ManifoldPoint& base() const { return base_; }
  const std::vector<Vec3>& frame() const { return frame_; }
  double epsilon() const { return epsilon_; }
  double lambda() const { return lambda_; }
  int dimension() const { return model_.dimension(); }

  TangentChart with_lambda(double lambda) const { return {model_, base_, epsilon_, lambda}; }

  /// True when u / lambda lies in the open ball B_epsilon.
  bool in_window(std::span<const double> u) const;
  ManifoldPoint to_manifold(std::span<const double> u) const;
  /// lambda * log_p(x); x must be inside the injectivity ball.
  ChartPoint from_manifold(const ManifoldPoint& x) const;

  /// Density of lambda^m (phi_lambda)^* vol_g with respect to Lebesgue
  /// measure in chart coordinates: 1 on flat models, sin(r)/r with
  /// r = |u|/lambda on the sphere.
  double reference_density(std::span<const double> u) const;

 private:
  ManifoldModel model_;
  ManifoldPoint base_;
  std::vector<Vec3> frame_;
  double epsilon_;
  double lambda_;
};

double euclidean_norm(std::span<const double> u);

/// lambda * d_g(exp_p(u/lambda), exp_p(v/lambda)); tends to |u - v| as lambda grows.
double scaled_distance(const TangentChart& chart, std::span<const double> u,
                       std::span<const double> v);

/// Default base point: north pole on the sphere, the zero angle elsewhere.
ManifoldPoint default_base_point(const ManifoldModel& model);

}  // namespace specdpp
