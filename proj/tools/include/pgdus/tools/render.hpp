#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgdus/estimation.hpp"
#include "pgdus/model_select.hpp"

namespace pgdus::tools {

enum class Format { Table, Csv, Json };

Format parse_format(const std::string& name);

/// Single-model fit with its goodness-of-fit numbers.
struct FitReport {
  FitResult fit;
  std::size_t n;
  double aic;
  double bic;
  double ks_d;
  double p_value;
  PValueMethod pvalue_method;
};

/// Seven significant digits, as used in the aligned tables.
std::string short_number(double v);
/// Shortest text that parses back to the same double.
std::string full_number(double v);

nlohmann::json params_json(const ParamVector& p);

void render(std::ostream& os, const FitReport& r, Format f);
void render(std::ostream& os, const ComparisonTable& t, Format f);

struct EvalRow {
  double x;
  double value;
  std::string error;    // Errc name, empty when value is valid
  std::string message;  // human-readable detail for error rows
};
void render(std::ostream& os, const std::string& fn, const std::vector<EvalRow>& rows, Format f);

}  // namespace pgdus::tools
