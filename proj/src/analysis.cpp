#include "specdpp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/distributions/students_t.hpp>

#include "specdpp/errors.hpp"
#include "specdpp/specfun.hpp"

namespace specdpp {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Surface area of the unit sphere S^{m-1} (2 for m = 1).
double unit_sphere_area(int m) { return m * unit_ball_volume(m); }

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_and_se(std::span<const double> values) {
  const auto n = static_cast<double>(values.size());
  MeanSe out;
  for (double v : values) out.mean += v;
  out.mean /= n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.se = std::sqrt(ss / (n - 1.0) / n);
  }
  return out;
}

// Unit directions with weights summing to one, for averaging over S^{m-1}.
struct Direction {
  std::vector<double> unit;
  double weight;
};

std::vector<Direction> direction_rule(int m) {
  std::vector<Direction> dirs;
  if (m == 1) {
    dirs.push_back({{1.0}, 0.5});
    dirs.push_back({{-1.0}, 0.5});
  } else if (m == 2) {
    constexpr int n = 32;
    for (int k = 0; k < n; ++k) {
      const double a = kTwoPi * k / n;
      dirs.push_back({{std::cos(a), std::sin(a)}, 1.0 / n});
    }
  } else if (m == 3) {
    const QuadratureRule polar = gauss_legendre(12, -1.0, 1.0);
    constexpr int n = 24;
    for (std::size_t i = 0; i < polar.size(); ++i) {
      const double z = polar.nodes[i];
      const double s = std::sqrt(1.0 - z * z);
      for (int k = 0; k < n; ++k) {
        const double a = kTwoPi * k / n;
        dirs.push_back({{s * std::cos(a), s * std::sin(a), z}, polar.weights[i] / (2.0 * n)});
      }
    }
  } else {
    throw DomainError("direction averages implemented for m <= 3");
  }
  return dirs;
}

// Shell average of f(d) over edges[b] <= |d| < edges[b+1] with weight r^{m-1}.
template <class F>
std::vector<double> shell_averages(int m, std::span<const double> edges, F&& f) {
  const auto dirs = direction_rule(m);
  std::vector<double> out;
  for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
    const QuadratureRule radial = gauss_legendre(24, edges[b], edges[b + 1]);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < radial.size(); ++i) {
      const double r = radial.nodes[i];
      const double w = radial.weights[i] * std::pow(r, m - 1);
      for (const auto& dir : dirs) {
        std::vector<double> d(dir.unit);
        for (double& x : d) x *= r;
        num += w * dir.weight * f(d);
        den += w * dir.weight;
      }
    }
    out.push_back(num / den);
  }
  return out;
}

void check_edges(std::span<const double> edges) {
  if (edges.size() < 2) throw DomainError("need at least one bin (two edges)");
  if (edges[0] < 0.0) throw DomainError("radial edges must be non-negative");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) throw DomainError("radial edges must increase");
  }
}

double student_t_975(int dof) {
  if (dof < 1) return std::numeric_limits<double>::infinity();
  boost::math::students_t dist(dof);
  return boost::math::quantile(dist, 0.975);
}

}  // namespace

CoordinateKernel manifold_kernel(const SpectralBasis& basis) {
  return [&basis](std::span<const double> x, std::span<const double> y) {
    const ManifoldModel& model = basis.model();
    return projection_kernel(basis, make_point(model, x), make_point(model, y));
  };
}

CoordinateKernel universal_coordinate_kernel(int m) {
  return [m](std::span<const double> u, std::span<const double> v) {
    return universal_kernel(m, u, v);
  };
}

SlopeFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("slope fit needs >= 2 points");
  const auto n = static_cast<double>(x.size());
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw DomainError("log-log fit needs positive data");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  SlopeFit fit;
  fit.points = static_cast<int>(lx.size());
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (lx.size() > 2) {
    double sse = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      const double r = ly[i] - fit.intercept - fit.slope * lx[i];
      sse += r * r;
    }
    const double se = std::sqrt(sse / (n - 2.0) / sxx);
    fit.half_width = student_t_975(static_cast<int>(lx.size()) - 2) * se;
  } else {
    fit.half_width = std::numeric_limits<double>::infinity();
  }
  return fit;
}

// ---------------------------------------------------------------------------

double weyl_leading_term(const ManifoldModel& model, double lambda) {
  const int m = model.dimension();
  return std::pow(lambda, m) * unit_ball_volume(m) * model.total_volume() / std::pow(kTwoPi, m);
}

WeylResult weyl_check(const ManifoldModel& model, std::span<const double> lambdas) {
  WeylResult result;
  result.manifold = model.name();
  result.dimension = model.dimension();
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0)) throw DomainError("weyl_check: lambdas must be positive");
    if (i > 0 && !(lambdas[i] > lambdas[i - 1])) {
      throw DomainError("weyl_check: lambdas must be increasing");
    }
  }
  std::vector<double> xs, ys;
  for (double lambda : lambdas) {
    WeylRow row;
    row.lambda = lambda;
    row.count = count(model, lambda);
    row.leading = weyl_leading_term(model, lambda);
    row.ratio = static_cast<double>(row.count) / row.leading;
    row.residual = static_cast<double>(row.count) - row.leading;
    if (row.residual != 0.0) {
      xs.push_back(lambda);
      ys.push_back(std::abs(row.residual));
    }
    result.rows.push_back(row);
  }
  if (lambdas.size() < 3) {
    result.notices.push_back("fewer than 3 lambda values: residual slope omitted");
  } else if (xs.size() < 3) {
    result.notices.push_back("fewer than 3 non-zero residuals: residual slope omitted");
  } else {
    result.residual_slope = fit_loglog(xs, ys);
  }
  return result;
}

EstimatorReport WeylResult::report() const {
  EstimatorReport r;
  r.name = "weyl";
  ReportTable t{{"lambda", "count", "leading", "ratio", "residual"}, {}};
  for (const auto& row : rows) {
    t.rows.push_back({row.lambda, static_cast<double>(row.count), row.leading, row.ratio,
                      row.residual});
  }
  r.tables["weyl"] = std::move(t);
  if (residual_slope) r.slopes["log_abs_residual_vs_log_lambda"] = *residual_slope;
  r.scalars["expected_residual_exponent_bound"] = dimension - 1.0;
  r.notices = notices;
  r.metadata["manifold"] = manifold;
  return r;
}

// ---------------------------------------------------------------------------

ConvergenceResult kernel_convergence(const ManifoldModel& model, const ManifoldPoint& base,
                                     std::span<const double> epsilons,
                                     std::span<const double> lambdas,
                                     const std::vector<ChartPoint>& grid) {
  if (epsilons.empty() || lambdas.empty()) throw DomainError("kernel_convergence: empty input");
  if (grid.empty()) throw DomainError("kernel_convergence: empty grid");
  const int m = model.dimension();
  double grid_radius = 0.0;
  for (const auto& u : grid) grid_radius = std::max(grid_radius, euclidean_norm(u));
  const double min_lambda = *std::min_element(lambdas.begin(), lambdas.end());
  for (double eps : epsilons) {
    if (!(grid_radius / min_lambda < eps)) {
      throw DomainError("kernel_convergence: grid leaves the chart window at the smallest lambda");
    }
  }

  ConvergenceResult result;
  result.manifold = model.name();
  result.base = base;
  result.grid_size = grid.size();
  result.epsilons.assign(epsilons.begin(), epsilons.end());

  const KernelTable limit = tabulate(UniversalKernel{m}, grid, grid);
  const ChartPoint origin(m, 0.0);
  const double limit_diagonal = universal_kernel(m, origin, origin);

  std::vector<std::vector<ConvergenceRow>> by_eps(epsilons.size());
  for (double lambda : lambdas) {
    const SpectralBasis basis(model, lambda);
    for (std::size_t k = 0; k < epsilons.size(); ++k) {
      const TangentChart chart(model, base, epsilons[k], lambda);
      const KernelTable scaled = tabulate(ScaledKernel{&basis, &chart}, grid, grid);
      ConvergenceRow row;
      row.epsilon = epsilons[k];
      row.lambda = lambda;
      row.basis_size = basis.size();
      row.sup_difference = (scaled.values - limit.values).cwiseAbs().maxCoeff();
      row.diagonal_difference =
          std::abs(scaled_kernel(basis, chart, origin, origin) - limit_diagonal);
      by_eps[k].push_back(row);
    }
  }
  for (const auto& rows : by_eps) result.rows.insert(result.rows.end(), rows.begin(), rows.end());

  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    const auto d = result.sup_differences(k);
    const bool positive = std::all_of(d.begin(), d.end(), [](double x) { return x > 0.0; });
    if (lambdas.size() >= 4 && positive) {
      result.slopes.push_back(fit_loglog(lambdas, d));
    } else {
      result.notices.push_back("slope for epsilon index " + std::to_string(k) +
                               " omitted: needs >= 4 lambdas with non-zero D");
    }
  }
  for (std::size_t k = 1; k < epsilons.size(); ++k) {
    const auto a = result.sup_differences(0);
    const auto b = result.sup_differences(k);
    for (std::size_t i = 0; i < a.size(); ++i) {
      result.epsilon_disagreement = std::max(result.epsilon_disagreement, std::abs(a[i] - b[i]));
    }
  }
  return result;
}

std::vector<double> ConvergenceResult::sup_differences(std::size_t k) const {
  std::vector<double> out;
  for (const auto& row : rows) {
    if (row.epsilon == epsilons.at(k)) out.push_back(row.sup_difference);
  }
  return out;
}

EstimatorReport ConvergenceResult::report() const {
  EstimatorReport r;
  r.name = "converge";
  ReportTable t{{"epsilon", "lambda", "basis_size", "sup_difference", "diagonal_difference"}, {}};
  for (const auto& row : rows) {
    t.rows.push_back({row.epsilon, row.lambda, static_cast<double>(row.basis_size),
                      row.sup_difference, row.diagonal_difference});
  }
  r.tables["convergence"] = std::move(t);
  for (std::size_t k = 0; k < slopes.size(); ++k) {
    r.slopes["log_sup_difference_vs_log_lambda_eps" + std::to_string(k)] = slopes[k];
  }
  r.scalars["epsilon_disagreement"] = epsilon_disagreement;
  r.scalars["grid_size"] = static_cast<double>(grid_size);
  r.notices = notices;
  r.metadata["manifold"] = manifold;
  r.metadata["base_point"] = base.coords;
  return r;
}

// ---------------------------------------------------------------------------

Binning Binning::manifold(const ManifoldModel& model, int divisions) {
  if (divisions < 1) throw DomainError("binning needs at least one division");
  Binning b;
  b.space_ = Space::Manifold;
  b.model_ = model;
  b.divisions_ = divisions;
  const int bins = model.kind() == ManifoldKind::Sphere2
                       ? divisions * divisions
                       : static_cast<int>(std::pow(divisions, model.dimension()));
  b.measures_.assign(bins, model.total_volume() / bins);
  return b;
}

Binning Binning::chart_shells(const TangentChart& chart, std::vector<double> edges) {
  check_edges(edges);
  Binning b;
  b.space_ = Space::Chart;
  b.model_ = chart.model();
  b.edges_ = std::move(edges);
  const int m = chart.dimension();
  const double area = unit_sphere_area(m);
  for (std::size_t k = 0; k + 1 < b.edges_.size(); ++k) {
    const QuadratureRule radial = gauss_legendre(32, b.edges_[k], b.edges_[k + 1]);
    double total = 0.0;
    for (std::size_t i = 0; i < radial.size(); ++i) {
      ChartPoint u(m, 0.0);
      u[0] = radial.nodes[i];
      total += radial.weights[i] * std::pow(radial.nodes[i], m - 1) * chart.reference_density(u);
    }
    b.measures_.push_back(area * total);
  }
  return b;
}

int Binning::locate(std::span<const double> coords) const {
  if (space_ == Space::Chart) {
    const double r = euclidean_norm(coords);
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), r);
    if (it == edges_.begin() || it == edges_.end()) return -1;
    return static_cast<int>(it - edges_.begin()) - 1;
  }
  const auto cell = [this](double t) {  // t in [0, 1)
    return std::clamp(static_cast<int>(t * divisions_), 0, divisions_ - 1);
  };
  if (model_.kind() == ManifoldKind::Sphere2) {
    const int band = cell(0.5 * (coords[2] + 1.0));
    const int sector = cell(wrap_angle(std::atan2(coords[1], coords[0])) / kTwoPi);
    return band * divisions_ + sector;
  }
  int index = 0;
  for (int d = 0; d < model_.dimension(); ++d) {
    index = index * divisions_ + cell(wrap_angle(coords[d]) / kTwoPi);
  }
  return index;
}

IntensityResult estimate_intensity(std::span<const PointConfiguration> configs,
                                   const Binning& bins) {
  if (configs.size() < 100) throw DomainError("estimate_intensity needs at least 100 replicas");
  const std::size_t nb = bins.size();
  std::vector<std::vector<double>> counts(nb, std::vector<double>(configs.size(), 0.0));
  for (std::size_t r = 0; r < configs.size(); ++r) {
    if (configs[r].space != bins.space()) {
      throw DomainError("estimate_intensity: configuration and bins live in different spaces");
    }
    for (std::size_t i = 0; i < configs[r].size(); ++i) {
      const int b = bins.locate(configs[r].coords(i));
      if (b >= 0) counts[b][r] += 1.0;
    }
  }
  IntensityResult out;
  out.space = bins.space();
  out.replicas = configs.size();
  for (std::size_t b = 0; b < nb; ++b) {
    const MeanSe s = mean_and_se(counts[b]);
    out.measure.push_back(bins.measure(b));
    out.intensity.push_back(s.mean / bins.measure(b));
    out.se.push_back(s.se / bins.measure(b));
    out.empty.push_back(s.mean == 0.0);
  }
  return out;
}

EstimatorReport IntensityResult::report() const {
  EstimatorReport r;
  r.name = "intensity";
  ReportTable t{{"bin", "measure", "intensity", "intensity_se", "empty"}, {}};
  for (std::size_t b = 0; b < intensity.size(); ++b) {
    t.rows.push_back({static_cast<double>(b), measure[b], intensity[b], se[b],
                      empty[b] ? 1.0 : 0.0});
    if (empty[b]) r.notices.push_back("bin " + std::to_string(b) + " is empty");
  }
  r.tables["intensity"] = std::move(t);
  r.scalars["replicas"] = static_cast<double>(replicas);
  return r;
}

// ---------------------------------------------------------------------------

PcfResult estimate_pcf(std::span<const PointConfiguration> configs, int m, double half_width,
                       std::span<const double> edges) {
  if (configs.size() < 1000) throw DomainError("estimate_pcf needs at least 1000 replicas");
  if (!(half_width > 0.0)) throw DomainError("estimate_pcf: window half-width must be positive");
  check_edges(edges);
  const std::size_t nb = edges.size() - 1;
  const double side = 2.0 * half_width;
  const double window_volume = std::pow(side, m);
  const double area = unit_sphere_area(m);
  std::vector<double> shell(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    shell[b] = area / m * (std::pow(edges[b + 1], m) - std::pow(edges[b], m));
  }

  std::vector<std::vector<double>> per_replica(nb, std::vector<double>(configs.size(), 0.0));
  double total_points = 0.0;
  std::vector<const ChartPoint*> inside;
  for (std::size_t r = 0; r < configs.size(); ++r) {
    const auto& config = configs[r];
    if (config.space != Space::Chart) throw DomainError("estimate_pcf needs chart configurations");
    inside.clear();
    for (const auto& p : config.chart_points) {
      if (p.size() != static_cast<std::size_t>(m)) throw DomainError("estimate_pcf: dimension");
      const bool in_box = std::all_of(p.begin(), p.end(),
                                      [&](double x) { return std::abs(x) <= half_width; });
      if (in_box) inside.push_back(&p);
    }
    total_points += static_cast<double>(inside.size());
    for (std::size_t i = 0; i < inside.size(); ++i) {
      for (std::size_t j = 0; j < inside.size(); ++j) {
        if (i == j) continue;
        double overlap = 1.0;
        double sq = 0.0;
        for (int k = 0; k < m; ++k) {
          const double d = (*inside[j])[k] - (*inside[i])[k];
          overlap *= side - std::abs(d);
          sq += d * d;
        }
        const double dist = std::sqrt(sq);
        const auto it = std::upper_bound(edges.begin(), edges.end(), dist);
        if (it == edges.begin() || it == edges.end() || overlap <= 0.0) continue;
        const auto b = static_cast<std::size_t>(it - edges.begin()) - 1;
        per_replica[b][r] += 1.0 / (overlap * shell[b]);
      }
    }
  }

  PcfResult out;
  out.dimension = m;
  out.half_width = half_width;
  out.replicas = configs.size();
  out.edges.assign(edges.begin(), edges.end());
  out.intensity = total_points / (static_cast<double>(configs.size()) * window_volume);
  const double rho2 = out.intensity * out.intensity;
  for (std::size_t b = 0; b < nb; ++b) {
    const MeanSe s = mean_and_se(per_replica[b]);
    out.g.push_back(rho2 > 0.0 ? s.mean / rho2 : 0.0);
    out.se.push_back(rho2 > 0.0 ? s.se / rho2 : 0.0);
    out.flagged.push_back(edges[b + 1] > side);
  }
  out.limit = pcf_limit(m, edges);
  return out;
}

std::vector<double> pcf_truth(const SpectralBasis& basis, const TangentChart& chart,
                              std::span<const double> edges) {
  check_edges(edges);
  const int m = chart.dimension();
  const ChartPoint origin(m, 0.0);
  const double k00 = scaled_kernel(basis, chart, origin, origin);
  return shell_averages(m, edges, [&](const std::vector<double>& d) {
    const double k = scaled_kernel(basis, chart, origin, d) / k00;
    return 1.0 - k * k;
  });
}

std::vector<double> pcf_limit(int m, std::span<const double> edges) {
  check_edges(edges);
  const BesselOrder order = BesselOrder::half(m);
  const double f0 = f_alpha(order, 0.0);
  return shell_averages(m, edges, [&](const std::vector<double>& d) {
    const double k = f_alpha(order, euclidean_norm(d)) / f0;
    return 1.0 - k * k;
  });
}

EstimatorReport PcfResult::report() const {
  EstimatorReport r;
  r.name = "pcf";
  std::vector<std::string> cols{"r_low", "r_high", "g", "g_se", "flagged", "limit"};
  if (!truth.empty()) cols.push_back("truth");
  ReportTable t{cols, {}};
  for (std::size_t b = 0; b < g.size(); ++b) {
    std::vector<double> row{edges[b], edges[b + 1], g[b], se[b], flagged[b] ? 1.0 : 0.0, limit[b]};
    if (!truth.empty()) row.push_back(truth[b]);
    t.rows.push_back(std::move(row));
    if (flagged[b]) r.notices.push_back("bin " + std::to_string(b) + " exceeds the window side");
  }
  r.tables["pcf"] = std::move(t);
  r.scalars["intensity"] = intensity;
  r.scalars["replicas"] = static_cast<double>(replicas);
  r.scalars["window_half_width"] = half_width;
  return r;
}

// ---------------------------------------------------------------------------

double fredholm_det(const CoordinateKernel& kernel, const TestFunction& h,
                    const QuadratureRule& quad) {
  if (quad.order < 2) throw DomainError("fredholm_det: quadrature order must be at least 2");
  const auto n = static_cast<Eigen::Index>(quad.size());
  Eigen::VectorXd sw(n), hm1(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    sw(i) = std::sqrt(quad.weights[i]);
    hm1(i) = h(quad.node(i)) - 1.0;
  }
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = hm1(i) * sw(i) * kernel(quad.node(i), quad.node(j)) * sw(j);
    }
    m(i, i) += 1.0;
  }
  return m.partialPivLu().determinant();
}

double gap_probability(const CoordinateKernel& kernel, const QuadratureRule& quad) {
  return fredholm_det(kernel, [](std::span<const double>) { return 0.0; }, quad);
}

Estimate laplace_functional_mc(std::span<const PointConfiguration> configs,
                               const TestFunction& h) {
  if (configs.size() < 1000) throw DomainError("laplace_functional_mc needs at least 1000 replicas");
  std::vector<double> values(configs.size());
  for (std::size_t r = 0; r < configs.size(); ++r) {
    double prod = 1.0;
    for (std::size_t i = 0; i < configs[r].size(); ++i) prod *= h(configs[r].coords(i));
    values[r] = prod;
  }
  const MeanSe s = mean_and_se(values);
  return {s.mean, s.se};
}

Estimate empty_prob_mc(std::span<const PointConfiguration> configs, const Region& region) {
  return laplace_functional_mc(configs, [&region](std::span<const double> x) {
    return region(x) ? 0.0 : 1.0;
  });
}

std::optional<double> ArcTestFunction::offset(double theta) const {
  const double s = wrap_angle(theta - start);
  if (s < length) return s;
  return std::nullopt;
}

double ArcTestFunction::operator()(std::span<const double> coords) const {
  const auto s = offset(coords[0]);
  if (!s) return 1.0;
  const double t = 2.0 * *s / length - 1.0;  // in [-1, 1)
  const double bump = std::abs(t) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - t * t)) : 0.0;
  switch (shape) {
    case Shape::Indicator:
      return 1.0 - depth;
    case Shape::Bump:
      return 1.0 - depth * bump;
    case Shape::Oscillating:
      return 1.0 + depth * std::sin(std::numbers::pi * t) * bump;
  }
  return 1.0;
}

}  // namespace specdpp
