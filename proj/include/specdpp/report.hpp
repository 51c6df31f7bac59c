#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace specdpp {

/// Monte Carlo scalar with its standard error.
struct Estimate {
  double value = 0.0;
  double se = 0.0;
};

/// Least-squares slope of log y against log x with a 95% half-width.
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double half_width = 0.0;
  int points = 0;
};

/// Column-named numeric table. Columns ending in "_se" are standard errors.
struct ReportTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct EstimatorReport {
  std::string name;
  std::map<std::string, double> scalars;
  std::map<std::string, Estimate> estimates;
  std::map<std::string, ReportTable> tables;
  std::map<std::string, SlopeFit> slopes;
  std::vector<std::string> notices;
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
};
/// results: scalars, estimate values and tables; errors_se: estimate
/// standard errors and every "_se" table column; slopes: fits.
nlohmann::ordered_json results_json(const EstimatorReport& report);
nlohmann::ordered_json errors_json(const EstimatorReport& report);
nlohmann::ordered_json slopes_json(const EstimatorReport& report);

/// Top-level report document: command, config, results, errors_se, slopes,
/// runtime_seconds.
nlohmann::ordered_json report_document(const std::string& command,
                                       const nlohmann::ordered_json& config,
                                       const EstimatorReport& report, double runtime_seconds);

}  // namespace specdpp
