#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "specdpp/chart.hpp"
#include "specdpp/random.hpp"
#include "specdpp/spectrum.hpp"

namespace specdpp {

enum class Space { Manifold, Chart };

/// One realisation of a point process, either on the manifold or pulled
/// back to chart coordinates.
struct PointConfiguration {
  Space space = Space::Manifold;
  std::vector<ManifoldPoint> manifold_points;
  std::vector<ChartPoint> chart_points;
  std::uint64_t seed = 0;
  std::uint64_t replica = 0;
  double lambda = 0.0;
  ManifoldModel model = ManifoldModel::circle();

  std::size_t size() const {
    return space == Space::Manifold ? manifold_points.size() : chart_points.size();
  }
  /// Coordinates of point i: manifold coordinates or chart coordinates.
  std::span<const double> coords(std::size_t i) const {
    return space == Space::Manifold ? manifold_points[i].view(model)
                                    : std::span<const double>(chart_points[i]);
  }
};

/// sup_x sum_i phi_i(x)^2. On the model manifolds the diagonal is constant,
/// so this is N / vol(M); a fixed-seed search over 10^4 uniform points
/// throws ConsistencyError if any point exceeds it by more than 1e-9.
double sup_feature_norm(const SpectralBasis& basis);

/// Exact sampler for the projection DPP with kernel E_lambda.
///
/// Points are drawn one at a time. Given orthonormal vectors e_1..e_i
/// spanning the features of the accepted points, the next point has density
/// (|Phi(x)|^2 - sum_j <Phi(x), e_j>^2) / (N - i) against vol_g, drawn by
/// rejection from the uniform distribution with envelope sup |Phi|^2.
class ProjectionSampler {
 public:
  explicit ProjectionSampler(const SpectralBasis& basis);

  const SpectralBasis& basis() const { return *basis_; }
  double envelope() const { return envelope_; }

  /// Exactly N points. Throws ConsistencyError on envelope violation and
  /// DegenerateFeatureError when a residual feature norm drops below 1e-10.
  PointConfiguration sample(RandomStream& rng) const;

 private:
  const SpectralBasis* basis_;
  double envelope_;
};

PointConfiguration sample_dpp(const SpectralBasis& basis, const ManifoldModel& model,
                              RandomStream& rng);

/// Replicas first..first+count-1, each on its own stream (seed, replica).
/// Output is ordered by replica index and independent of the thread count.
std::vector<PointConfiguration> sample_replicas(const ProjectionSampler& sampler,
                                                std::uint64_t seed, std::uint64_t count,
                                                std::uint64_t first = 0);
std::vector<PointConfiguration> sample_replicas_serial(const ProjectionSampler& sampler,
                                                       std::uint64_t seed, std::uint64_t count,
                                                       std::uint64_t first = 0);

/// Points inside the chart ball mapped to lambda * log_p(x).
PointConfiguration pull_back(const PointConfiguration& config, const TangentChart& chart);

}  // namespace specdpp
