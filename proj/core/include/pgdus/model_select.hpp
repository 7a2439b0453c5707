#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pgdus/dataset.hpp"
#include "pgdus/estimation.hpp"
#include "pgdus/model.hpp"

namespace pgdus {

/// Right-continuous empirical cdf of a dataset.
class EcdfView {
 public:
  explicit EcdfView(const Dataset& data);

  std::span<const double> points() const noexcept { return points_; }
  /// steps()[i] = (i + 1) / n, paired with points()[i].
  std::span<const double> steps() const noexcept { return steps_; }
  /// Fraction of observations <= x.
  double operator()(double x) const noexcept;

 private:
  std::vector<double> points_;
  std::vector<double> steps_;
};

EcdfView ecdf(const Dataset& data);

/// Two-sided Kolmogorov-Smirnov distance between the sample and `model_cdf`,
/// computed from the sorted observations.
double ks_statistic(const Dataset& data, const std::function<double(double)>& model_cdf);
double ks_statistic(const Dataset& data, const ParamVector& p);

enum class PValueMethod {
  /// Limiting Kolmogorov distribution of sqrt(n) * D.
  Asymptotic,
  /// Marsaglia-Tsang-Wang matrix algorithm for the finite-n distribution.
  Exact,
  /// Exact for n <= 100, asymptotic above.
  Auto,
};

std::string_view to_string(PValueMethod m) noexcept;
/// Throws Error(UnknownName).
PValueMethod parse_pvalue_method(std::string_view name);

/// P(D_n >= d). Throws Error(DomainError) unless d in [0, 1] and n >= 1.
double ks_pvalue(double d, std::size_t n, PValueMethod method = PValueMethod::Asymptotic);

double aic(double log_l, std::size_t k);
double bic(double log_l, std::size_t k, std::size_t n);

struct ComparisonRow {
  ModelKind kind;
  ParamVector params;
  double log_likelihood;
  double aic;
  double bic;
  double ks_d;
  double p_value;
  std::size_t param_count;
  bool converged;
  double grad_norm;
};

struct ComparisonTable {
  std::size_t n = 0;
  PValueMethod pvalue_method = PValueMethod::Asymptotic;
  /// Ranked by AIC ascending; equal AIC keeps input order.
  std::vector<ComparisonRow> rows;
  /// Footnotes on where the rows depart from the published ball-bearing
  /// comparison. Empty unless the dataset is that builtin sample.
  std::vector<std::string> notes;

  bool all_converged() const noexcept;
};

struct CompareOptions {
  FitOptions fit;
  PValueMethod pvalue_method = PValueMethod::Asymptotic;
};

/// Throws Error(DomainError) when `kinds` is empty.
ComparisonTable compare(const Dataset& data, std::span<const ModelKind> kinds,
                        const CompareOptions& opts = {});

/// True when the dataset holds exactly the builtin ball-bearing values.
bool is_lawless(const Dataset& data);

/// Audit footnotes comparing rows against the published table.
std::vector<std::string> published_deltas(std::span<const ComparisonRow> rows, std::size_t n);

}  // namespace pgdus
