#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace pgdus {

struct QuadOptions {
  double rel_tol = 1e-10;
  std::size_t max_subdivisions = 2000;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;      // estimated absolute error
  std::size_t panels = 0;  // panels evaluated by the adaptive driver
};

using Integrand = std::function<double(double)>;

/// Adaptive double-exponential quadrature on [a, b]. Endpoint singularities
/// that are integrable are fine. Panels whose error estimate exceeds their
/// share of the tolerance are bisected; more than opts.max_subdivisions
/// panels, or any non-finite result, throws Error(QuadFailure).
QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opts = {});

/// Same over [a, b] split at the given interior breakpoints (must be sorted).
QuadResult integrate(const Integrand& f, std::span<const double> breakpoints,
                     const QuadOptions& opts = {});

/// [a, +inf) via the exp-sinh transform.
QuadResult integrate_to_infinity(const Integrand& f, double a, const QuadOptions& opts = {});

}  // namespace pgdus
