#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace specdpp {

/// Resolved command-line configuration shared by every subcommand.
struct ExperimentConfig {
  std::string command;
  std::string manifold = "circle";
  std::optional<double> lambda;
  std::vector<double> lambdas;
  std::vector<double> point;  // empty: default base point
  std::vector<double> eps;    // empty: injectivity radius / 2
  std::uint64_t replicas = 1;
  std::uint64_t seed = 0;
  std::string out;
  std::string report;
  int threads = 0;
  int quad_order = 64;
  double grid_radius = 4.0;
  double grid_step = 1.0;
  std::string kind = "scaled";
  int dim = 1;
  double half_width = 1.0;
  double arc = 0.5;
  double arc_start = 0.0;
  bool chart = false;
  int bins = 3;
  double window = 6.0;
  double bin_width = 0.5;
  std::string test = "indicator";
  double depth = 1.0;

  nlohmann::ordered_json to_json() const;
};

/// Exit codes of run_command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one subcommand (weyl, kernel, sample, converge, gap, pcf, laplace).
/// args excludes the program name. Primary output goes to --out or to `out`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace specdpp
