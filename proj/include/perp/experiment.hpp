#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"
#include "perp/mixing_law.hpp"

namespace perp {

inline constexpr const char* kVersionString = "perp 0.1.0";

struct ExperimentConfig {
  MixingLaw law = MixingLaw::power_uniform(1.0);
  double q = 1.0;
  std::vector<double> xs;  // strictly increasing after grid expansion
  long long n_samples = 100000;
  std::uint64_t seed = 12345;
  int workers = 1;
  double eps_trunc = 1e-9;
  std::string out;
};

MixingLaw law_from_json(const nlohmann::json& j);
nlohmann::json law_to_json(const MixingLaw& law);

// Parses the config object; validates every field, default x grid is
// geometric on [2q, 50q] with 12 points.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

struct ReportRow {
  double x = 0.0;
  std::optional<double> ln_predicted;
  std::optional<double> ln_bracket_lo;
  std::optional<double> ln_bracket_hi;
  std::optional<double> ln_path_cert;
  std::optional<double> ln_sandwich_lo;
  std::optional<double> ln_sandwich_hi;
  std::optional<double> ln_atom_lower;
  std::optional<double> p_hat;
  std::optional<double> ci99_lo;
  std::optional<double> ci99_hi;
  std::optional<double> ln_p_hat;
  std::optional<double> ratio_to_normalizer;
};

struct TailReport {
  std::vector<ReportRow> rows;
};

TailReport cmd_predict(const ExperimentConfig& cfg);
TailReport cmd_simulate(const ExperimentConfig& cfg);
TailReport cmd_bounds(const ExperimentConfig& cfg);

// RFC-4180 CSV, fixed column order, header always, floats with 10
// significant digits, empty cells for inapplicable columns.
std::string report_to_csv(const TailReport& report);

// Merge CSV texts row-wise on the x column, preferring non-empty cells.
std::string merge_csv(const std::vector<std::string>& csvs);

// Writes the CSV to cfg.out plus a JSON sidecar (cfg.out + ".json")
// echoing the resolved config and version string.
void write_report(const ExperimentConfig& cfg, const TailReport& report,
                  const std::string& command);

}  // namespace perp
