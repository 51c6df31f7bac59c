// One PASS/FAIL line per acceptance criterion, each under its runtime budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "specdpp/analysis.hpp"
#include "specdpp/kernel.hpp"
#include "specdpp/quadrature.hpp"
#include "specdpp/sampler.hpp"

using namespace specdpp;
using std::numbers::pi;

namespace {

constexpr std::uint64_t kSeed = 20261019;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [violated: " << what << "]";
    }
  }
};

using Criterion = std::function<void(Outcome&)>;

void weyl(Outcome& o) {
  const std::vector<double> l50{50};
  for (const auto& model : {ManifoldModel::circle(), ManifoldModel::flat_torus(2),
                            ManifoldModel::sphere2()}) {
    const auto row = weyl_check(model, l50).rows.at(0);
    o.detail << " " << model.name() << " N=" << row.count << " ratio=" << row.ratio;
    o.require(row.ratio >= 0.98 && row.ratio <= 1.02, model.name() + " ratio in [0.98,1.02]");
    if (model.kind() == ManifoldKind::Sphere2) {
      o.require(row.count == 2500 && row.ratio == 1.0, "sphere2 ratio exactly 1");
    }
  }
}

void idempotence(Outcome& o) {
  const auto circle = ManifoldModel::circle();
  const auto basis = build_basis(circle, 3.5);
  const auto rule = periodic_trapezoid(4096, 0.0, 2 * pi);
  RandomStream rng(kSeed, 2);
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const auto x = uniform_sample(circle, rng), y = uniform_sample(circle, rng);
    double s = 0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const ManifoldPoint z{{rule.node(q)[0], 0, 0}};
      s += rule.weights[q] * projection_kernel(basis, x, z) * projection_kernel(basis, z, y);
    }
    worst = std::max(worst, std::abs(s - projection_kernel(basis, x, y)));
  }
  o.detail << " max residual=" << worst;
  o.require(worst <= 1e-10, "residual <= 1e-10");
}

void convergence(Outcome& o) {
  const std::vector<double> eps{pi / 2, pi / 3}, lambdas{20, 40, 80, 160};
  for (const auto& model : {ManifoldModel::sphere2(), ManifoldModel::circle()}) {
    const int m = model.dimension();
    const auto grid = chart_grid(m, 4.0, m == 1 ? 0.125 : 0.5);
    const auto r = kernel_convergence(model, default_base_point(model), eps, lambdas, grid);
    const auto d = r.sup_differences(0);
    bool decreasing = true;
    for (std::size_t i = 1; i < d.size(); ++i) decreasing = decreasing && d[i] < d[i - 1];
    o.detail << " " << model.name() << ": D=";
    for (double x : d) o.detail << x << " ";
    const double slope = r.slopes.empty() ? NAN : r.slopes[0].slope;
    o.detail << "slope=" << slope << " eps-disagreement=" << r.epsilon_disagreement << ";";
    o.require(decreasing, model.name() + " D strictly decreasing");
    o.require(slope >= -1.4 && slope <= -0.6, model.name() + " slope in [-1.4,-0.6]");
    o.require(r.epsilon_disagreement == 0.0, model.name() + " identical across eps");
  }
}

void sampler_exactness(Outcome& o) {
  const auto sphere = ManifoldModel::sphere2();
  const auto basis = build_basis(sphere, 10);
  const auto configs = sample_replicas(ProjectionSampler(basis), kSeed, 2000);
  bool sizes = true;
  for (const auto& c : configs) sizes = sizes && c.size() == 100;
  o.require(sizes, "every replica has 100 points");
  const auto bins = Binning::manifold(sphere, 3);
  const auto est = estimate_intensity(configs, bins);
  const double target = 100 / (4 * pi);
  double worst = 0;
  for (std::size_t b = 0; b < bins.size(); ++b) {
    worst = std::max(worst, std::abs(est.intensity[b] - target) / est.se[b]);
  }
  o.detail << " bins=" << bins.size() << " max |z|=" << worst;
  o.require(worst <= 3.0, "every bin within 3 s.e.");
}

void laplace_identity(Outcome& o) {
  const auto circle = ManifoldModel::circle();
  const auto basis = build_basis(circle, 3.5);
  const auto configs = sample_replicas(ProjectionSampler(basis), kSeed, 100000);
  ArcTestFunction arc;
  arc.start = 0.0;
  arc.length = 0.5;
  const auto mc = empty_prob_mc(configs, [&](std::span<const double> x) { return arc.contains(x); });
  const auto kernel = manifold_kernel(basis);
  const double d64 = gap_probability(kernel, gauss_legendre(64, 0.0, 0.5));
  const double d128 = gap_probability(kernel, gauss_legendre(128, 0.0, 0.5));
  o.detail << " MC=" << mc.value << " se=" << mc.se << " det64=" << d64
           << " |det64-det128|=" << std::abs(d64 - d128);
  o.require(std::abs(mc.value - d64) <= 3 * mc.se, "MC within 3 s.e. of det");
  o.require(std::abs(d64 - d128) <= 1e-6, "self-convergence <= 1e-6");
}

void sinc_gap(Outcome& o) {
  const double s = 0.01;
  const double det = gap_probability(universal_coordinate_kernel(1), gauss_legendre(64, -s, s));
  const double expected = 1 - 2 * s / pi;
  o.detail << " det=" << det << " 1-2s/pi=" << expected;
  o.require(std::abs(det - expected) <= 1e-4, "within 1e-4");
}

void fourier_ball_oracle(Outcome& o) {
  RandomStream rng(kSeed, 7);
  auto u = [&] { return rng.uniform(); };
  double worst = 0;
  for (int m = 1; m <= 3; ++m) {
    for (int t = 0; t < 20; ++t) {
      const Eigen::MatrixXd g = oracle::random_spd(m, u);
      Eigen::VectorXd eta(m);
      for (int k = 0; k < m; ++k) eta(k) = rng.normal();
      eta *= 10 * u() / eta.norm();
      const double expected = oracle::ball_transform(g, eta);
      const double got =
          fourier_ball(SPDMatrix(g), std::vector<double>(eta.data(), eta.data() + m));
      worst = std::max(worst, std::abs(got - expected) / std::abs(expected));
    }
  }
  o.detail << " max relative error=" << worst;
  o.require(worst <= 1e-6, "relative error <= 1e-6");
}

void scaled_distance_limit(Outcome& o) {
  const auto sphere = ManifoldModel::sphere2();
  const auto base = default_base_point(sphere);
  RandomStream rng(kSeed, 8);
  bool monotone = true;
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    std::vector<double> u(2), v(2);
    for (auto* w : {&u, &v}) {
      const double r = 2 * std::sqrt(rng.uniform()), a = 2 * pi * rng.uniform();
      (*w)[0] = r * std::cos(a);
      (*w)[1] = r * std::sin(a);
    }
    const double target = std::hypot(u[0] - v[0], u[1] - v[1]);
    double previous = INFINITY;
    for (double lambda : {1e1, 1e2, 1e3, 1e4}) {
      const TangentChart chart(sphere, base, pi / 2, lambda);
      const double err = std::abs(scaled_distance(chart, u, v) - target);
      monotone = monotone && err < previous;
      previous = err;
    }
    worst = std::max(worst, previous);
  }
  o.detail << " max error at 1e4=" << worst;
  o.require(monotone, "error decreasing in lambda");
  o.require(worst <= 1e-3, "error <= 1e-3 at lambda 1e4");
}

void pair_correlation(Outcome& o) {
  const auto torus = ManifoldModel::flat_torus(1);
  const double lambda = 40, window = 6;
  const auto basis = build_basis(torus, lambda);
  const TangentChart chart(torus, default_base_point(torus), pi / 2, lambda);
  const auto draws = sample_replicas(ProjectionSampler(basis), kSeed, 10000);
  std::vector<PointConfiguration> pulled;
  pulled.reserve(draws.size());
  for (const auto& c : draws) pulled.push_back(pull_back(c, chart));
  std::vector<double> edges;
  for (int k = 0; k <= 12; ++k) edges.push_back(0.5 * k);
  const auto pcf = estimate_pcf(pulled, 1, window, edges);
  const auto truth = pcf_truth(basis, chart, edges);
  double z_truth = 0, z_limit = 0;
  for (std::size_t b = 0; b < pcf.g.size(); ++b) {
    z_truth = std::max(z_truth, std::abs(pcf.g[b] - truth[b]) / pcf.se[b]);
    if (edges[b] >= 0.5) z_limit = std::max(z_limit, std::abs(pcf.g[b] - pcf.limit[b]) / pcf.se[b]);
  }
  o.detail << " bins=" << pcf.g.size() << " max |z| truth=" << z_truth
           << " max |z| limit=" << z_limit;
  o.require(z_truth <= 3.0, "within 3 s.e. of truth on every bin");
  o.require(z_limit <= 3.0, "within 3 s.e. of limit on [0.5, 6]");
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    double budget_seconds;
    Criterion run;
  };
  const Entry entries[] = {
      {1, "Weyl law ratios at lambda 50", 1.0, weyl},
      {2, "projection idempotence", 5.0, idempotence},
      {3, "scaled kernel convergence rate", 120.0, convergence},
      {4, "sampler exactness on the sphere", 300.0, sampler_exactness},
      {5, "empty probability vs Fredholm determinant", 600.0, laplace_identity},
      {6, "sine-kernel gap expansion", 1.0, sinc_gap},
      {7, "Fourier transform of the metric ball", 30.0, fourier_ball_oracle},
      {8, "scaled geodesic distance limit", 10.0, scaled_distance_limit},
      {9, "pair correlation universality", 600.0, pair_correlation},
  };
  int failures = 0;
  for (const auto& e : entries) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      e.run(o);
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail << " [exception: " << ex.what() << "]";
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds >= e.budget_seconds) {
      o.pass = false;
      o.detail << " [over runtime budget]";
    }
    failures += !o.pass;
    std::printf("%s criterion %d (%s): %.3f s of %.0f s;%s\n", o.pass ? "PASS" : "FAIL", e.id,
                e.name, seconds, e.budget_seconds, o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
