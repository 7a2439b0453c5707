#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "pgdus/dataset.hpp"
#include "pgdus/model.hpp"

namespace pgdus {

struct FitOptions {
  std::size_t starts = 8;
  std::size_t max_iters = 5000;
  double grad_tol = 1e-6;
  double step_tol = 1e-10;
  std::uint64_t seed = 20240601;
  /// Run the starts on separate threads. Results match serial execution.
  bool parallel = false;
};

/// Throws Error(DomainError) unless starts >= 1 and both tolerances are positive.
void validate(const FitOptions& opts);

struct FitResult {
  ModelKind kind;
  ParamVector params;
  double log_likelihood;
  bool converged;
  std::size_t iterations;
  /// Score norm in natural parameters scaled by 1 / (1 + |logL|).
  double grad_norm;
  std::size_t start_used;
};

/// Sum of log_pdf over the observations.
double log_likelihood(const ParamVector& p, const Dataset& data);

/// Analytic (d/dlambda, d/dtheta) of the PGDUSE log-likelihood.
std::array<double, 2> score_pgduse(const PgduseParams& p, const Dataset& data);

/// Gradient of the log-likelihood in natural parameters. Analytic for
/// PGDUSE, DUSE and ED; central differences in log space for GDUSE and KME.
std::array<double, 2> score(const ParamVector& p, const Dataset& data);

/// Multi-start maximum likelihood. ED uses the closed form. When no start
/// meets grad_tol the best point found is still returned, flagged
/// converged = false.
FitResult fit_mle(ModelKind kind, const Dataset& data, const FitOptions& opts = {});

/// n / sum(x).
ScalarParam fit_ed_closed_form(const Dataset& data);

}  // namespace pgdus
