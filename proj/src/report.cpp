#include "specdpp/report.hpp"

namespace specdpp {

nlohmann::ordered_json results_json(const EstimatorReport& report) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  out["name"] = report.name;
  for (const auto& [key, value] : report.scalars) out["scalars"][key] = value;
  for (const auto& [key, est] : report.estimates) out["estimates"][key] = est.value;
  for (const auto& [key, table] : report.tables) {
    out["tables"][key]["columns"] = table.columns;
    out["tables"][key]["rows"] = table.rows;
  }
  if (!report.notices.empty()) out["notices"] = report.notices;
  if (!report.metadata.empty()) out["metadata"] = report.metadata;
  return out;
}

nlohmann::ordered_json errors_json(const EstimatorReport& report) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& [key, est] : report.estimates) out[key] = est.se;
  for (const auto& [key, table] : report.tables) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      const auto& name = table.columns[c];
      if (name.size() < 3 || name.compare(name.size() - 3, 3, "_se") != 0) continue;
      std::vector<double> column;
      for (const auto& row : table.rows) column.push_back(row[c]);
      out[key][name] = column;
    }
  }
  return out;
}

nlohmann::ordered_json slopes_json(const EstimatorReport& report) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& [key, fit] : report.slopes) {
    out[key] = {{"slope", fit.slope},
                {"intercept", fit.intercept},
                {"half_width_95", fit.half_width},
                {"points", fit.points}};
  }
  return out;
}

nlohmann::ordered_json report_document(const std::string& command,
                                       const nlohmann::ordered_json& config,
                                       const EstimatorReport& report, double runtime_seconds) {
  nlohmann::ordered_json doc;
  doc["command"] = command;
  doc["config"] = config;
  doc["results"] = results_json(report);
  doc["errors_se"] = errors_json(report);
  doc["slopes"] = slopes_json(report);
  doc["runtime_seconds"] = runtime_seconds;
  return doc;
}

}  // namespace specdpp
