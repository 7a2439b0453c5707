#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pgdus/model.hpp"

namespace pgdus {

// Distribution functions for every ModelKind. Inputs below the support
// follow a plotting-friendly convention instead of throwing: for x < 0,
// cdf = 0, pdf = 0, survival = 1, hazard = 0, log_pdf = -inf.
//
// At x = 0 the density of PGDUSE (theta < 1) and GDUSE (alpha < 1) is
// unbounded; pdf and log_pdf return +inf there. Likelihood code never
// reaches that point since observations are strictly positive.

double cdf(const ParamVector& p, double x);
double pdf(const ParamVector& p, double x);
double log_pdf(const ParamVector& p, double x);
double survival(const ParamVector& p, double x);
/// pdf / survival; +inf once survival underflows to zero.
double hazard(const ParamVector& p, double x);

/// Inverse cdf on [0, 1). Throws Error(DomainError) for q outside that range.
double quantile(const ParamVector& p, double q);

/// Closed-form PGDUSE median; identical to quantile(p, 0.5).
double median(const PgduseParams& p);

/// Inverse-transform sample of size n. The generator is owned by the call
/// and seeded from `seed`, so equal seeds give identical output.
std::vector<double> sample(const ParamVector& p, std::size_t n, std::uint64_t seed);

/// Maps a 64-bit generator word onto the open interval (0, 1).
double unit_open(std::uint64_t word) noexcept;

}  // namespace pgdus
