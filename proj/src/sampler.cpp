#include "specdpp/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specdpp/errors.hpp"
#include "specdpp/parallel.hpp"

namespace specdpp {
namespace {

constexpr std::uint64_t kEnvelopeCheckSeed = 0x5eed5eed5eedULL;
constexpr int kEnvelopeCheckPoints = 10000;
constexpr double kEnvelopeSlack = 1e-9;
constexpr double kDegenerateNorm = 1e-10;

}  // namespace

double sup_feature_norm(const SpectralBasis& basis) {
  const ManifoldModel& model = basis.model();
  const double exact = static_cast<double>(basis.size()) / model.total_volume();
  RandomStream rng(kEnvelopeCheckSeed, 0);
  Eigen::VectorXd f(static_cast<Eigen::Index>(basis.size()));
  for (int k = 0; k < kEnvelopeCheckPoints; ++k) {
    basis.evaluate(uniform_sample(model, rng), {f.data(), basis.size()});
    if (f.squaredNorm() > exact * (1.0 + kEnvelopeSlack)) {
      throw ConsistencyError("feature norm exceeds N/vol(M) on " + model.name() +
                             "; diagonal is not homogeneous");
    }
  }
  return exact;
}

ProjectionSampler::ProjectionSampler(const SpectralBasis& basis)
    : basis_(&basis), envelope_(sup_feature_norm(basis)) {
  if (basis.size() == 0) throw DomainError("sampler needs a non-empty basis");
}

PointConfiguration ProjectionSampler::sample(RandomStream& rng) const {
  const SpectralBasis& basis = *basis_;
  const ManifoldModel& model = basis.model();
  const auto n = static_cast<Eigen::Index>(basis.size());

  PointConfiguration config;
  config.space = Space::Manifold;
  config.seed = rng.seed();
  config.replica = rng.replica();
  config.lambda = basis.cutoff_lambda();
  config.model = model;
  config.manifold_points.reserve(static_cast<std::size_t>(n));

  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> ortho(n, n);
  Eigen::VectorXd f(n);
  Eigen::VectorXd coeffs(n);

  for (Eigen::Index i = 0; i < n; ++i) {
    const auto accepted = ortho.topRows(i);
    for (;;) {
      const ManifoldPoint x = uniform_sample(model, rng);
      basis.evaluate(x, {f.data(), static_cast<std::size_t>(n)});
      coeffs.head(i).noalias() = accepted * f;
      const double residual = f.squaredNorm() - coeffs.head(i).squaredNorm();
      if (residual > envelope_ * (1.0 + kEnvelopeSlack)) {
        throw ConsistencyError("rejection envelope exceeded at step " + std::to_string(i));
      }
      if (rng.uniform() * envelope_ >= residual) continue;

      // Modified Gram-Schmidt, two passes.
      Eigen::VectorXd v = f;
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index j = 0; j < i; ++j) v -= accepted.row(j).dot(v) * accepted.row(j).transpose();
      }
      const double norm = v.norm();
      if (norm < kDegenerateNorm) {
        throw DegenerateFeatureError("feature vector of accepted point is degenerate at step " +
                                     std::to_string(i));
      }
      ortho.row(i) = v.transpose() / norm;
      config.manifold_points.push_back(x);
      break;
    }
  }
  return config;
}

PointConfiguration sample_dpp(const SpectralBasis& basis, const ManifoldModel& model,
                              RandomStream& rng) {
  if (!(basis.model() == model)) throw DomainError("sample_dpp: basis built for another manifold");
  return ProjectionSampler(basis).sample(rng);
}

namespace {

std::vector<PointConfiguration> run_replicas(const ProjectionSampler& sampler, std::uint64_t seed,
                                             std::uint64_t count, std::uint64_t first,
                                             bool parallel) {
  std::vector<PointConfiguration> out(count);
  parallel_for(static_cast<std::int64_t>(count), parallel, [&](std::int64_t k) {
    RandomStream rng(seed, first + static_cast<std::uint64_t>(k));
    out[k] = sampler.sample(rng);
  });
  return out;
}

}  // namespace

std::vector<PointConfiguration> sample_replicas(const ProjectionSampler& sampler,
                                                std::uint64_t seed, std::uint64_t count,
                                                std::uint64_t first) {
  return run_replicas(sampler, seed, count, first, true);
}

std::vector<PointConfiguration> sample_replicas_serial(const ProjectionSampler& sampler,
                                                       std::uint64_t seed, std::uint64_t count,
                                                       std::uint64_t first) {
  return run_replicas(sampler, seed, count, first, false);
}

PointConfiguration pull_back(const PointConfiguration& config, const TangentChart& chart) {
  if (config.space != Space::Manifold) throw DomainError("pull_back needs a manifold configuration");
  if (std::abs(config.lambda - chart.lambda()) > 1e-12 * std::max(1.0, chart.lambda())) {
    throw DomainError("pull_back: chart scale differs from the configuration's lambda");
  }
  PointConfiguration out;
  out.space = Space::Chart;
  out.seed = config.seed;
  out.replica = config.replica;
  out.lambda = config.lambda;
  out.model = config.model;
  for (const auto& x : config.manifold_points) {
    if (distance(chart.model(), chart.base(), x) < chart.epsilon()) {
      out.chart_points.push_back(chart.from_manifold(x));
    }
  }
  return out;
}

}  // namespace specdpp
