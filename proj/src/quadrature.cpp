#include "specdpp/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "specdpp/errors.hpp"

namespace specdpp {
namespace {

// Nodes/weights on [-1, 1] by Newton iteration on P_n.
void legendre_nodes(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0;
    double p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("quadrature order must be positive");
  if (!(b > a)) throw DomainError("quadrature interval is empty");
  std::vector<double> x, w;
  legendre_nodes(n, x, w);
  QuadratureRule rule;
  rule.kind = QuadratureRule::Kind::GaussLegendre;
  rule.order = n;
  rule.dimension = 1;
  rule.domain_volume = b - a;
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (int i = 0; i < n; ++i) {
    rule.nodes.push_back(mid + half * x[i]);
    rule.weights.push_back(half * w[i]);
  }
  return rule;
}

QuadratureRule periodic_trapezoid(int n, double a, double b) {
  if (n < 1) throw DomainError("quadrature order must be positive");
  if (!(b > a)) throw DomainError("quadrature interval is empty");
  QuadratureRule rule;
  rule.kind = QuadratureRule::Kind::Trapezoid;
  rule.order = n;
  rule.dimension = 1;
  rule.domain_volume = b - a;
  const double h = (b - a) / n;
  for (int i = 0; i < n; ++i) {
    rule.nodes.push_back(a + i * h);
    rule.weights.push_back(h);
  }
  return rule;
}

QuadratureRule gauss_legendre_box(int n, std::span<const double> lo, std::span<const double> hi) {
  if (lo.size() != hi.size() || lo.empty()) throw DomainError("box bounds mismatch");
  const int dims = static_cast<int>(lo.size());
  std::vector<QuadratureRule> axes;
  for (int d = 0; d < dims; ++d) axes.push_back(gauss_legendre(n, lo[d], hi[d]));

  QuadratureRule rule;
  rule.kind = QuadratureRule::Kind::GaussLegendre;
  rule.order = n;
  rule.dimension = dims;
  rule.domain_volume = 1.0;
  for (int d = 0; d < dims; ++d) rule.domain_volume *= hi[d] - lo[d];
  std::vector<int> k(dims, 0);
  for (;;) {
    double w = 1.0;
    for (int d = 0; d < dims; ++d) {
      rule.nodes.push_back(axes[d].nodes[k[d]]);
      w *= axes[d].weights[k[d]];
    }
    rule.weights.push_back(w);
    int d = dims - 1;
    while (d >= 0 && k[d] == n - 1) k[d--] = 0;
    if (d < 0) break;
    ++k[d];
  }
  return rule;
}

}  // namespace specdpp
