#pragma once

#include <array>
#include <span>

#include "pgdus/dataset.hpp"
#include "pgdus/model.hpp"

namespace pgdus {

/// Millions of revolutions to failure for 23 ball bearings on life test
/// (Lawless, 1982), in the published order.
std::span<const double> lawless_values() noexcept;
Dataset lawless_bearings();

/// One row of the published five-model comparison on the ball-bearing data,
/// as printed (including its known inconsistencies for DUSE and KME).
struct PublishedFit {
  ModelKind kind;
  std::array<double, 2> params;  // storage order of param_names(kind)
  double log_likelihood;
  double aic;
  double bic;
  double ks_d;
  double p_value;
};

std::span<const PublishedFit> published_lawless_fits() noexcept;
const PublishedFit& published_lawless_fit(ModelKind kind);

}  // namespace pgdus
