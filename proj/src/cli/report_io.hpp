#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qamc/cauchy.hpp"
#include "qamc/estimators.hpp"
#include "qamc/harness.hpp"

namespace qamc::cli {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv };

/// Shortest decimal string that parses back to exactly `value`.
std::string format_number(double value);

struct VarianceRow {
  EstimatorKind estimator = EstimatorKind::Geometric;
  TheoreticalAsymptotics limits;
  double cramer_rao = 0.0;
  /// cramer_rao / n_var_limit; 1 means the estimator attains the bound.
  double efficiency = 0.0;
};

struct VarianceTable {
  double mu = 0.0;
  double sigma = 1.0;
  std::vector<VarianceRow> rows;
};

Json to_json(const EstimateRecord& record);
Json to_json(const ExperimentReport& report);
Json to_json(const HarmonicCheckReport& report);
Json to_json(const VarianceTable& table);

std::string to_csv(const EstimateRecord& record);
std::string to_csv(const ExperimentReport& report);
std::string to_csv(const HarmonicCheckReport& report);
std::string to_csv(const VarianceTable& table);

/// JSON text as written by the CLI (two-space indent, trailing newline).
std::string render(const Json& doc);

}  // namespace qamc::cli
