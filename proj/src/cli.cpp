#include "specdpp/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "specdpp/analysis.hpp"
#include "specdpp/csv.hpp"
#include "specdpp/errors.hpp"
#include "specdpp/parallel.hpp"

namespace specdpp {
namespace {

const std::vector<std::string> kCommands{"weyl", "kernel", "sample", "converge",
                                         "gap",  "pcf",    "laplace"};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

std::vector<double> resolved_lambdas(const ExperimentConfig& cfg) {
  if (!cfg.lambdas.empty()) return cfg.lambdas;
  if (cfg.lambda) return {*cfg.lambda};
  return {};
}

ManifoldPoint base_point(const ExperimentConfig& cfg, const ManifoldModel& model) {
  if (cfg.point.empty()) return default_base_point(model);
  return make_point(model, cfg.point);
}

std::vector<double> resolved_eps(const ExperimentConfig& cfg, const ManifoldModel& model) {
  if (!cfg.eps.empty()) return cfg.eps;
  return {0.5 * model.injectivity_radius()};
}

bool flat(const ManifoldModel& model) { return model.kind() != ManifoldKind::Sphere2; }

// Validates the fields each command needs before anything is computed.
void validate(const ExperimentConfig& cfg) {
  const auto& c = cfg.command;
  const bool universal = c == "gap" && cfg.kind == "universal";
  std::optional<ManifoldModel> model;
  try {
    model = ManifoldModel::parse(cfg.manifold);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  require(cfg.kind == "scaled" || cfg.kind == "universal", "--kind must be scaled or universal");
  require(cfg.quad_order >= 2, "--quad-order must be at least 2");
  require(cfg.threads >= 0, "--threads must be non-negative");
  for (double e : cfg.eps) {
    require(e > 0.0 && e < model->injectivity_radius(), "--eps must lie in (0, pi)");
  }
  if (!cfg.point.empty()) {
    try {
      make_point(*model, cfg.point);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("--point: ") + e.what());
    }
  }
  if (c == "weyl" || c == "converge") {
    require(!resolved_lambdas(cfg).empty(), c + " needs --lambdas (or --lambda)");
  } else if (!universal && !(c == "kernel" && cfg.kind == "universal")) {
    require(cfg.lambda.has_value(), c + " needs --lambda");
  }
  for (double l : resolved_lambdas(cfg)) require(l >= 0.0, "lambda must be non-negative");
  if (c == "converge" || c == "kernel") {
    require(cfg.grid_radius >= 0.0 && cfg.grid_step > 0.0, "grid radius/step out of range");
  }
  if (c == "gap") {
    if (universal) {
      require(cfg.dim >= 1 && cfg.dim <= 8, "--dim must be in 1..8");
      require(cfg.half_width > 0.0, "--half-width must be positive");
    } else {
      require(flat(*model), "gap on a manifold needs circle or torus:m");
      require(cfg.arc > 0.0 && cfg.arc < 2.0 * std::numbers::pi, "--arc must lie in (0, 2pi)");
    }
  }
  if (c == "laplace") {
    require(model->dimension() == 1, "laplace needs circle or torus:1");
    require(cfg.replicas >= 1000, "laplace needs --replicas >= 1000");
    require(cfg.test == "indicator" || cfg.test == "bump" || cfg.test == "oscillating",
            "--test must be indicator, bump or oscillating");
    require(cfg.arc > 0.0 && cfg.arc < 2.0 * std::numbers::pi, "--arc must lie in (0, 2pi)");
    require(cfg.depth >= 0.0 && cfg.depth <= 1.0, "--depth must lie in [0, 1]");
  }
  if (c == "pcf") {
    require(flat(*model), "pcf needs a flat model (circle or torus:m)");
    require(cfg.replicas >= 1000, "pcf needs --replicas >= 1000");
    require(cfg.window > 0.0 && cfg.bin_width > 0.0, "--window and --bin-width must be positive");
  }
  if (c == "sample") {
    require(cfg.replicas >= 1, "--replicas must be at least 1");
    require(cfg.bins >= 1, "--bins must be at least 1");
  }
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      os_ = &fallback;
    } else {
      file_.open(path);
      if (!file_) throw ConfigError("cannot open output file " + path);
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

void write_json(const std::string& path, std::ostream& fallback,
                const nlohmann::ordered_json& doc) {
  Output o(path, fallback);
  o.stream() << doc.dump(2) << '\n';
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct RunContext {
  const ExperimentConfig& cfg;
  std::ostream& out;
  Clock::time_point start;

  nlohmann::ordered_json document(const EstimatorReport& report) const {
    return report_document(cfg.command, cfg.to_json(), report, seconds_since(start));
  }
};

void cmd_weyl(const RunContext& ctx) {
  const auto model = ManifoldModel::parse(ctx.cfg.manifold);
  const auto lambdas = resolved_lambdas(ctx.cfg);
  const WeylResult result = weyl_check(model, lambdas);
  Output o(ctx.cfg.out, ctx.out);
  write_weyl_csv(o.stream(), result);
  if (!ctx.cfg.report.empty()) write_json(ctx.cfg.report, ctx.out, ctx.document(result.report()));
}

void cmd_kernel(const RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  const auto model = ManifoldModel::parse(cfg.manifold);
  const int m = model.dimension();
  const auto grid = chart_grid(m, cfg.grid_radius, cfg.grid_step);
  KernelTable table;
  if (cfg.kind == "universal") {
    table = tabulate(UniversalKernel{m}, grid, grid);
  } else {
    const SpectralBasis basis(model, *cfg.lambda);
    const TangentChart chart(model, base_point(cfg, model), resolved_eps(cfg, model).front(),
                             *cfg.lambda);
    table = tabulate(ScaledKernel{&basis, &chart}, grid, grid);
  }
  Output o(cfg.out, ctx.out);
  write_kernel_csv(o.stream(), table);
}

void cmd_sample(const RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  const auto model = ManifoldModel::parse(cfg.manifold);
  const SpectralBasis basis(model, *cfg.lambda);
  const ProjectionSampler sampler(basis);
  auto configs = sample_replicas(sampler, cfg.seed, cfg.replicas);
  std::optional<TangentChart> chart;
  if (cfg.chart) {
    chart.emplace(model, base_point(cfg, model), resolved_eps(cfg, model).front(), *cfg.lambda);
    for (auto& c : configs) c = pull_back(c, *chart);
  }
  {
    Output o(cfg.out, ctx.out);
    write_points_csv(o.stream(), configs);
  }
  if (!cfg.report.empty()) {
    require(configs.size() >= 100, "an intensity report needs --replicas >= 100");
    Binning bins = Binning::manifold(model, cfg.bins);
    if (chart) {
      const double rmax = chart->epsilon() * chart->lambda();
      std::vector<double> edges;
      for (int k = 0; k <= cfg.bins; ++k) edges.push_back(rmax * k / cfg.bins);
      bins = Binning::chart_shells(*chart, edges);
    }
    EstimatorReport report = estimate_intensity(configs, bins).report();
    report.scalars["expected_manifold_intensity"] =
        static_cast<double>(basis.size()) / model.total_volume();
    write_json(cfg.report, ctx.out, ctx.document(report));
  }
}

void cmd_converge(const RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  const auto model = ManifoldModel::parse(cfg.manifold);
  const auto grid = chart_grid(model.dimension(), cfg.grid_radius, cfg.grid_step);
  const auto eps = resolved_eps(cfg, model);
  const auto lambdas = resolved_lambdas(cfg);
  const ConvergenceResult result = kernel_convergence(model, base_point(cfg, model), eps, lambdas, grid);
  write_json(cfg.out, ctx.out, ctx.document(result.report()));
}

void cmd_gap(const RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  EstimatorReport report;
  report.name = "gap";
  const int n = cfg.quad_order;
  std::function<double(int)> det;
  std::optional<SpectralBasis> basis;
  if (cfg.kind == "universal") {
    const std::vector<double> lo(cfg.dim, -cfg.half_width), hi(cfg.dim, cfg.half_width);
    const auto kernel = universal_coordinate_kernel(cfg.dim);
    det = [=](int order) { return gap_probability(kernel, gauss_legendre_box(order, lo, hi)); };
    report.scalars["first_order_expansion"] =
        1.0 - universal_kernel(cfg.dim, lo, lo) * std::pow(2.0 * cfg.half_width, cfg.dim);
  } else {
    const auto model = ManifoldModel::parse(cfg.manifold);
    basis.emplace(model, *cfg.lambda);
    const int m = model.dimension();
    const std::vector<double> lo(m, cfg.arc_start), hi(m, cfg.arc_start + cfg.arc);
    const auto kernel = manifold_kernel(*basis);
    det = [=](int order) { return gap_probability(kernel, gauss_legendre_box(order, lo, hi)); };
    report.scalars["basis_size"] = static_cast<double>(basis->size());
  }
  const double d1 = det(n);
  const double d2 = det(2 * n);
  report.scalars["gap_probability"] = d1;
  report.scalars["gap_probability_doubled_order"] = d2;
  report.scalars["self_convergence"] = std::abs(d1 - d2);
  write_json(cfg.out, ctx.out, ctx.document(report));
}

void cmd_pcf(const RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  const auto model = ManifoldModel::parse(cfg.manifold);
  const int m = model.dimension();
  const SpectralBasis basis(model, *cfg.lambda);
  const TangentChart chart(model, base_point(cfg, model), resolved_eps(cfg, model).front(),
                           *cfg.lambda);
  require(std::sqrt(static_cast<double>(m)) * cfg.window / cfg.lambda.value() < chart.epsilon(),
          "pcf window does not fit inside the chart ball");
  std::vector<double> edges;
  for (double r = 0.0; r < 2.0 * cfg.window - 1e-12; r += cfg.bin_width) edges.push_back(r);
  edges.push_back(std::min(edges.back() + cfg.bin_width, 2.0 * cfg.window));

  const ProjectionSampler sampler(basis);
  auto configs = sample_replicas(sampler, cfg.seed, cfg.replicas);
  for (auto& c : configs) c = pull_back(c, chart);
  PcfResult result = estimate_pcf(configs, m, cfg.window, edges);
  result.truth = pcf_truth(basis, chart, edges);
  write_json(cfg.out, ctx.out, ctx.document(result.report()));
}

void cmd_laplace(const RunContext& ctx) {
  const auto& cfg = ctx.cfg;
  const auto model = ManifoldModel::parse(cfg.manifold);
  const SpectralBasis basis(model, *cfg.lambda);
  ArcTestFunction h;
  h.start = cfg.arc_start;
  h.length = cfg.arc;
  h.depth = cfg.depth;
  h.shape = cfg.test == "bump"          ? ArcTestFunction::Shape::Bump
            : cfg.test == "oscillating" ? ArcTestFunction::Shape::Oscillating
                                        : ArcTestFunction::Shape::Indicator;
  const ProjectionSampler sampler(basis);
  const auto configs = sample_replicas(sampler, cfg.seed, cfg.replicas);
  const Estimate mc = laplace_functional_mc(configs, h);
  const auto kernel = manifold_kernel(basis);
  const double det_n =
      fredholm_det(kernel, h, gauss_legendre(cfg.quad_order, cfg.arc_start, cfg.arc_start + cfg.arc));
  const double det_2n = fredholm_det(
      kernel, h, gauss_legendre(2 * cfg.quad_order, cfg.arc_start, cfg.arc_start + cfg.arc));

  EstimatorReport report;
  report.name = "laplace";
  report.estimates["laplace_functional_mc"] = mc;
  report.scalars["fredholm_det"] = det_n;
  report.scalars["fredholm_det_doubled_order"] = det_2n;
  report.scalars["self_convergence"] = std::abs(det_n - det_2n);
  report.scalars["z_score"] = mc.se > 0.0 ? (mc.value - det_n) / mc.se : 0.0;
  write_json(cfg.out, ctx.out, ctx.document(report));
}

}  // namespace

nlohmann::ordered_json ExperimentConfig::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["manifold"] = manifold;
  j["lambda"] = lambda ? nlohmann::ordered_json(*lambda) : nlohmann::ordered_json(nullptr);
  j["lambdas"] = lambdas;
  j["point"] = point;
  j["eps"] = eps;
  j["replicas"] = replicas;
  j["seed"] = seed;
  j["out"] = out;
  j["report"] = report;
  j["threads"] = threads;
  j["quad_order"] = quad_order;
  j["grid_radius"] = grid_radius;
  j["grid_step"] = grid_step;
  j["kind"] = kind;
  j["dim"] = dim;
  j["half_width"] = half_width;
  j["arc"] = arc;
  j["arc_start"] = arc_start;
  j["chart"] = chart;
  j["bins"] = bins;
  j["window"] = window;
  j["bin_width"] = bin_width;
  j["test"] = test;
  j["depth"] = depth;
  // Defaults filled in at run time.
  const auto model = ManifoldModel::parse(manifold);
  j["eps_resolved"] = eps.empty() ? std::vector<double>{0.5 * model.injectivity_radius()} : eps;
  const auto p = point.empty() ? default_base_point(model) : make_point(model, point);
  const auto view = p.view(model);
  j["point_resolved"] = std::vector<double>(view.begin(), view.end());
  return j;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  CLI::App app{"Spectral-projection determinantal point processes on model manifolds", "specdpp"};
  app.set_config("--config", "", "Plain key=value file; command-line flags take precedence");
  app.add_option("command", cfg.command, "weyl | kernel | sample | converge | gap | pcf | laplace")
      ->required()
      ->check(CLI::IsMember(kCommands));
  app.add_option("--manifold", cfg.manifold, "circle | torus:m | sphere2");
  app.add_option("--lambda", cfg.lambda, "Spectral cutoff");
  app.add_option("--lambdas", cfg.lambdas, "Comma-separated cutoffs")->delimiter(',');
  app.add_option("--point", cfg.point, "Base point coordinates, comma-separated")->delimiter(',');
  app.add_option("--eps", cfg.eps, "Chart radius (default inj/2); converge accepts a list")
      ->delimiter(',');
  app.add_option("--replicas", cfg.replicas, "Number of independent replicas");
  app.add_option("--seed", cfg.seed, "Base seed");
  app.add_option("--out", cfg.out, "Output path (default stdout)");
  app.add_option("--report", cfg.report, "JSON report path for weyl and sample");
  app.add_option("--threads", cfg.threads, "Worker threads (default: all cores)");
  app.add_option("--quad-order", cfg.quad_order, "Gauss-Legendre order for determinants");
  app.add_option("--grid-radius", cfg.grid_radius, "Chart grid radius");
  app.add_option("--grid-step", cfg.grid_step, "Chart grid spacing");
  app.add_option("--kind", cfg.kind, "scaled | universal");
  app.add_option("--dim", cfg.dim, "Dimension of the universal kernel for gap");
  app.add_option("--half-width", cfg.half_width, "Half side of the universal gap box");
  app.add_option("--arc", cfg.arc, "Arc (or box side) length");
  app.add_option("--arc-start", cfg.arc_start, "Arc start angle");
  app.add_flag("--chart", cfg.chart, "sample: pull configurations back to the chart");
  app.add_option("--bins", cfg.bins, "sample: intensity bins per axis / shells");
  app.add_option("--window", cfg.window, "pcf: half side of the chart window");
  app.add_option("--bin-width", cfg.bin_width, "pcf: radial bin width");
  app.add_option("--test", cfg.test, "laplace: indicator | bump | oscillating");
  app.add_option("--depth", cfg.depth, "laplace: h = 1 - depth * profile on the arc");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code != 0) err << app.help();
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    validate(cfg);
    set_thread_count(cfg.threads);
    const RunContext ctx{cfg, out, Clock::now()};
    const auto& c = cfg.command;
    if (c == "weyl") cmd_weyl(ctx);
    else if (c == "kernel") cmd_kernel(ctx);
    else if (c == "sample") cmd_sample(ctx);
    else if (c == "converge") cmd_converge(ctx);
    else if (c == "gap") cmd_gap(ctx);
    else if (c == "pcf") cmd_pcf(ctx);
    else if (c == "laplace") cmd_laplace(ctx);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConsistencyError& e) {
    err << "numerical consistency failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace specdpp
