#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "specdpp/errors.hpp"
#include "specdpp/kernel.hpp"
#include "specdpp/parallel.hpp"
#include "specdpp/quadrature.hpp"
#include "specdpp/specfun.hpp"

using namespace specdpp;
using std::numbers::pi;

namespace {

std::vector<double> vec(std::initializer_list<double> v) { return v; }

}  // namespace

TEST_CASE("projection kernel examples") {
  const auto circle = ManifoldModel::circle();
  const auto b = build_basis(circle, 2.5);
  const ManifoldPoint zero{{0, 0, 0}}, half{{pi, 0, 0}};
  CHECK(projection_kernel(b, zero, zero) == doctest::Approx(5 / (2 * pi)).epsilon(1e-14));
  CHECK(projection_kernel(b, zero, half) == doctest::Approx(1 / (2 * pi)).epsilon(1e-13));
  const auto torus = ManifoldModel::flat_torus(2);
  const auto bt = build_basis(torus, 1);
  CHECK(projection_kernel(bt, zero, zero) == doctest::Approx(5 / (4 * pi * pi)).epsilon(1e-14));
}

TEST_CASE("projection kernel matches closed forms") {
  const auto circle = ManifoldModel::circle();
  RandomStream rng(2, 0);
  for (double lambda : {0.0, 3.5, 17.2}) {
    const auto b = build_basis(circle, lambda);
    for (int i = 0; i < 50; ++i) {
      const auto x = uniform_sample(circle, rng), y = uniform_sample(circle, rng);
      CHECK(projection_kernel(b, x, y) ==
            doctest::Approx(oracle::dirichlet(static_cast<int>(lambda), x.coords[0] - y.coords[0]))
                .epsilon(1e-12));
    }
  }
  const auto sphere = ManifoldModel::sphere2();
  const auto bs = build_basis(sphere, 30);
  for (int i = 0; i < 50; ++i) {
    const auto x = uniform_sample(sphere, rng), y = uniform_sample(sphere, rng);
    const double c = x.coords[0] * y.coords[0] + x.coords[1] * y.coords[1] + x.coords[2] * y.coords[2];
    CHECK(std::abs(projection_kernel(bs, x, y) - oracle::sphere_projection(bs.max_degree(), c)) <
          1e-11);
  }
}

TEST_CASE("reproducing property on the circle") {
  const auto circle = ManifoldModel::circle();
  const auto b = build_basis(circle, 3.5);
  const auto rule = periodic_trapezoid(4096, 0.0, 2 * pi);
  RandomStream rng(12, 0);
  for (int i = 0; i < 50; ++i) {
    const auto x = uniform_sample(circle, rng), y = uniform_sample(circle, rng);
    double s = 0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const ManifoldPoint z{{rule.node(q)[0], 0, 0}};
      s += rule.weights[q] * projection_kernel(b, x, z) * projection_kernel(b, z, y);
    }
    CHECK(std::abs(s - projection_kernel(b, x, y)) <= 1e-10);
  }
}

TEST_CASE("gram matrices are positive semidefinite") {
  for (const auto& model : {ManifoldModel::circle(), ManifoldModel::flat_torus(2),
                            ManifoldModel::sphere2()}) {
    const auto b = build_basis(model, 4.5);
    RandomStream rng(31, 0);
    for (int t = 0; t < 50; ++t) {
      std::vector<ManifoldPoint> pts;
      for (int i = 0; i < 8; ++i) pts.push_back(uniform_sample(model, rng));
      Eigen::MatrixXd gram(8, 8);
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) gram(i, j) = projection_kernel(b, pts[i], pts[j]);
      CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram).eigenvalues().minCoeff() >= -1e-10);
    }
  }
}

TEST_CASE("sphere kernel depends only on distance") {
  const auto sphere = ManifoldModel::sphere2();
  const auto b = build_basis(sphere, 12);
  RandomStream rng(41, 0);
  for (double d : {0.3, 1.1, 2.7}) {
    double reference = NAN;
    for (int i = 0; i < 100; ++i) {
      const auto x = uniform_sample(sphere, rng);
      const double a = 2 * pi * rng.uniform();
      const auto y = exp_map(sphere, {x, {d * std::cos(a), d * std::sin(a)}});
      const double k = projection_kernel(b, x, y);
      if (std::isnan(reference)) reference = k;
      CHECK(std::abs(k - reference) <= 1e-9);
    }
  }
}

TEST_CASE("scaled kernel examples") {
  const auto sphere = ManifoldModel::sphere2();
  const TangentChart chart(sphere, default_base_point(sphere), pi / 2, 10.0);
  const auto b = build_basis(sphere, 10);
  const auto o = vec({0, 0});
  CHECK(scaled_kernel(b, chart, o, o) == doctest::Approx(1 / (4 * pi)).epsilon(1e-13));
  const auto far = vec({10 * pi / 2, 0});
  CHECK(scaled_kernel(b, chart, o, far) == 0.0);
  CHECK(scaled_kernel(b, chart, far, far) == 0.0);

  const auto circle = ManifoldModel::circle();
  const TangentChart c40(circle, default_base_point(circle), pi / 2, 40.0);
  const auto b40 = build_basis(circle, 40);
  const auto v = vec({pi});
  const auto z = vec({0});
  const double value = scaled_kernel(b40, c40, z, v);
  CHECK(std::abs(value) < 0.03);
  CHECK(value == doctest::Approx(oracle::dirichlet(40, pi / 40) / 40).epsilon(1e-12));
}

TEST_CASE("universal kernel") {
  for (double r : {0.1, 1.0, 3.7, 12.5, 40.0}) {
    CHECK(universal_kernel(1, vec({r}), vec({0})) ==
          doctest::Approx(std::sin(r) / (pi * r)).epsilon(1e-12));
  }
  CHECK(universal_kernel(1, vec({2}), vec({2})) == doctest::Approx(1 / pi));
  CHECK(universal_kernel(2, vec({1, 2}), vec({1, 2})) == doctest::Approx(1 / (4 * pi)));
  CHECK_THROWS_AS(universal_kernel(2, vec({1}), vec({1, 2})), DomainError);
  for (int m = 1; m <= 3; ++m) {
    std::vector<double> u(m, 0.3), v(m, -0.4), d(m, 0.7);
    CHECK(std::abs(universal_kernel(m, u, v) -
                   fourier_ball(SPDMatrix::identity(m), d) / std::pow(2 * pi, 0.5 * m)) <= 1e-12);
  }
}

TEST_CASE("fourier ball and sphere examples") {
  CHECK(std::abs(fourier_ball(SPDMatrix::identity(1), vec({pi}))) < 1e-15);
  for (int m = 1; m <= 3; ++m) {
    CHECK(fourier_ball(SPDMatrix::identity(m), std::vector<double>(m, 0.0)) ==
          doctest::Approx(std::pow(2.0, -0.5 * m) / std::tgamma(0.5 * m + 1)));
  }
  Eigen::MatrixXd quarter(1, 1);
  quarter << 0.25;
  CHECK(fourier_ball(SPDMatrix(quarter), vec({pi})) == doctest::Approx(0.5079491).epsilon(1e-7));
  CHECK(fourier_ball(SPDMatrix(quarter), vec({pi})) ==
        doctest::Approx(std::sqrt(2 / pi) * (2 / pi)).epsilon(1e-14));
  CHECK(fourier_ball(SPDMatrix(quarter), vec({pi})) ==
        doctest::Approx(oracle::ball_transform(quarter, Eigen::VectorXd::Constant(1, pi)))
            .epsilon(1e-12));

  CHECK(fourier_sphere(SPDMatrix::identity(2), vec({0, 0})) == doctest::Approx(1.0));
  CHECK(fourier_sphere(SPDMatrix::identity(3), vec({0, 0, 0})) == doctest::Approx(std::sqrt(2 / pi)));
  const double j0 = 2.4048255576957730;
  CHECK(std::abs(fourier_sphere(SPDMatrix::identity(2), vec({j0 * 0.6, j0 * 0.8}))) < 1e-8);
  CHECK_THROWS_AS(fourier_sphere(SPDMatrix::identity(1), vec({1})), DomainError);
}

TEST_CASE("SPD validation") {
  Eigen::MatrixXd asym(2, 2);
  asym << 1, 0.5, 0.4, 1;
  CHECK_THROWS_AS(SPDMatrix{asym}, DomainError);
  Eigen::MatrixXd indefinite(2, 2);
  indefinite << 1, 2, 2, 1;
  CHECK_THROWS_AS(SPDMatrix{indefinite}, DomainError);
  CHECK_THROWS_AS(fourier_ball(SPDMatrix::identity(2), vec({1})), DomainError);
  Eigen::MatrixXd g(2, 2);
  g << 2, 0.5, 0.5, 1;
  const SPDMatrix spd(g);
  CHECK((spd.sqrt() * spd.sqrt() - g).norm() < 1e-14);
  CHECK(spd.determinant() == doctest::Approx(1.75));
}

TEST_CASE("fourier ball matches the defining integral") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto u = [&] { return unif(gen); };
  for (int m = 1; m <= 3; ++m) {
    for (int t = 0; t < 5; ++t) {
      const Eigen::MatrixXd g = oracle::random_spd(m, u);
      for (int s = 0; s < 4; ++s) {
        Eigen::VectorXd eta(m);
        for (int k = 0; k < m; ++k) eta(k) = u() - 0.5;
        eta *= 10 * u() / eta.norm();
        const std::vector<double> e(eta.data(), eta.data() + m);
        const double expected = oracle::ball_transform(g, eta);
        CHECK(std::abs(fourier_ball(SPDMatrix(g), e) - expected) <= 1e-6 * std::abs(expected));
      }
    }
  }
}

TEST_CASE("kernel tables") {
  const std::vector<ChartPoint> origin{{0.0, 0.0}};
  const auto t = tabulate(UniversalKernel{2}, origin, origin);
  REQUIRE(t.values.rows() == 1);
  CHECK(t.values(0, 0) == doctest::Approx(1 / (4 * pi)));
  CHECK_THROWS_AS(tabulate(UniversalKernel{2}, {}, origin), DomainError);

  const auto sphere = ManifoldModel::sphere2();
  const auto basis = build_basis(sphere, 20);
  const TangentChart chart(sphere, default_base_point(sphere), pi / 2, 20.0);
  const auto grid = chart_grid(2, 3.0, 1.0);
  CHECK(grid.size() == 29);
  const auto scaled = tabulate(ScaledKernel{&basis, &chart}, grid, grid);
  const auto limit = tabulate(UniversalKernel{2}, grid, grid);
  CHECK(scaled.kind == KernelKind::Scaled);
  CHECK(scaled.lambda == 20.0);
  const Eigen::MatrixXd diff = scaled.values - limit.values;
  CHECK(diff.allFinite());
  CHECK((diff - diff.transpose()).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(diff.cwiseAbs().maxCoeff() < 1e-2);
}

TEST_CASE("parallel and serial tabulation agree bit for bit") {
  const auto sphere = ManifoldModel::sphere2();
  const auto basis = build_basis(sphere, 40);
  const TangentChart chart(sphere, default_base_point(sphere), pi / 3, 40.0);
  const auto grid = chart_grid(2, 4.0, 0.5);
  for (int threads : {1, 2, 4}) {
    set_thread_count(threads);
    const auto a = tabulate(ScaledKernel{&basis, &chart}, grid, grid);
    const auto b = tabulate_serial(ScaledKernel{&basis, &chart}, grid, grid);
    CHECK(a.values == b.values);
    const auto c = tabulate(UniversalKernel{2}, grid, grid);
    const auto d = tabulate_serial(UniversalKernel{2}, grid, grid);
    CHECK(c.values == d.values);
  }
  set_thread_count(0);
}
