#pragma once

#include <span>
#include <vector>

namespace specdpp {

/// Nodes and positive weights on an interval or a tensor-product box.
/// Weights sum to the domain volume.
struct QuadratureRule {
  enum class Kind { GaussLegendre, Trapezoid };

  Kind kind = Kind::GaussLegendre;
  int order = 0;      // nodes per axis
  int dimension = 1;
  std::vector<double> nodes;  // dimension values per node, node-major
  std::vector<double> weights;
  double domain_volume = 0.0;

  std::size_t size() const { return weights.size(); }
  std::span<const double> node(std::size_t i) const {
    return {nodes.data() + i * static_cast<std::size_t>(dimension),
            static_cast<std::size_t>(dimension)};
  }
};

/// n-point Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);
/// Equal-weight rule on [a, b) for periodic integrands; exact for
/// trigonometric polynomials of degree < n.
QuadratureRule periodic_trapezoid(int n, double a, double b);
/// Tensor-product Gauss-Legendre rule on the box [lo, hi].
QuadratureRule gauss_legendre_box(int n, std::span<const double> lo, std::span<const double> hi);

}  // namespace specdpp
