#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "specdpp/manifold.hpp"

namespace specdpp {

enum class Branch { Constant, Cos, Sin };

/// One eigenfunction of sqrt(-Laplacian).
///
/// `eigenvalue_sq` is the exact integer lambda_i^2: k^2 on the circle, |k|^2
/// on the torus, l(l+1) on the sphere. `index` holds the frequency k, the
/// lattice representative k (first non-zero entry positive), or (l, j) with
/// j in -l..l for real spherical harmonics.
struct SpectralEntry {
  std::int64_t eigenvalue_sq = 0;
  std::array<int, 3> index{};
  Branch branch = Branch::Constant;

  double sqrt_eigenvalue() const { return std::sqrt(static_cast<double>(eigenvalue_sq)); }
};

/// Real orthonormal eigenbasis of W_{<= lambda}, ordered by eigenvalue and
/// then by label. Immutable; evaluation is thread-safe.
class SpectralBasis {
 public:
  SpectralBasis(const ManifoldModel& model, double cutoff_lambda);

  const ManifoldModel& model() const { return model_; }
  double cutoff_lambda() const { return cutoff_; }
  std::size_t size() const { return entries_.size(); }
  std::span<const SpectralEntry> entries() const { return entries_; }
  /// Largest spherical-harmonic degree (sphere only).
  int max_degree() const { return max_degree_; }

  /// Writes (phi_0(x), ..., phi_{N-1}(x)) into out, which must have size N.
  void evaluate(const ManifoldPoint& x, std::span<double> out) const;

 private:
  ManifoldModel model_;
  double cutoff_;
  int max_degree_ = 0;
  std::vector<SpectralEntry> entries_;
};

/// True when an eigenvalue with integer square `eigenvalue_sq` lies at or
/// below lambda. Thresholds are inclusive and robust to rounding in lambda^2.
bool within_cutoff(std::int64_t eigenvalue_sq, double lambda);

SpectralBasis build_basis(const ManifoldModel& model, double lambda);
std::vector<double> eval_basis(const SpectralBasis& basis, const ManifoldPoint& x);

/// N(lambda) by closed-form counting, without building the basis.
std::int64_t count(const ManifoldModel& model, double lambda);

}  // namespace specdpp
