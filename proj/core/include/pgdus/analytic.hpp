#pragma once

#include <complex>
#include <cstddef>

#include "pgdus/model.hpp"
#include "pgdus/quadrature.hpp"

namespace pgdus {

/// How the infinite sums for PGDUSE moments, MGF, CF and Renyi entropy are
/// expanded.
///
/// Binomial expands (e^w - 1)^(theta - 1) with the generalized binomial
/// theorem, w = 1 - exp(-lambda x), and the remaining exp(-c e^{-lambda x})
/// as a power series. The outer sum terminates when theta - 1 is a
/// nonnegative integer; otherwise its terms decay only like a power of k
/// and the sum usually exhausts max_terms.
///
/// Regularized factors w^(theta - 1) out of (e^w - 1)^(theta - 1) and
/// expands the analytic remainder ((e^w - 1)/w)^(theta - 1), whose radius
/// of convergence is 2*pi, so terms shrink geometrically for every theta.
///
/// Automatic uses Binomial when it terminates without heavy cancellation
/// and Regularized otherwise.
enum class SeriesMethod { Automatic, Binomial, Regularized };

struct SeriesOptions {
  double abs_tol = 1e-12;
  std::size_t max_terms = 200;
  SeriesMethod method = SeriesMethod::Automatic;
};

using ComplexValue = std::complex<double>;

/// E[X^r] for r >= 1 by series. Throws SeriesDivergence or DomainError.
double raw_moment_series(const PgduseParams& p, int r, const SeriesOptions& opts = {});

/// E[X^r] by adaptive quadrature of x^r pdf(x); the quadrature oracle for
/// the series above, usable with every model.
double raw_moment_quadrature(const ParamVector& p, int r, const QuadOptions& opts = {});

/// E[exp(tX)] for t < lambda; DomainError otherwise.
double mgf(const PgduseParams& p, double t, const SeriesOptions& opts = {});
double mgf_quadrature(const ParamVector& p, double t, const QuadOptions& opts = {});

/// E[exp(itX)].
ComplexValue cf(const PgduseParams& p, double t, const SeriesOptions& opts = {});
/// Integrated on [0, quantile(1 - 1e-12)], split at the zeros of cos and sin
/// when |t| exceeds the tail rate.
ComplexValue cf_quadrature(const ParamVector& p, double t, const QuadOptions& opts = {});

/// Principal log of cf(t); LogOfZero when |cf(t)| < 1e-300.
ComplexValue cgf(const PgduseParams& p, double t, const SeriesOptions& opts = {});

/// (1/(1 - delta)) log of the integral of pdf^delta, by quadrature. Throws
/// DomainError for delta <= 0 or delta == 1 and QuadFailure when pdf^delta
/// is not integrable (for PGDUSE: delta (1 - theta) >= 1).
double renyi_entropy(const ParamVector& p, double delta, const QuadOptions& opts = {});

/// Series form of the PGDUSE Renyi entropy; SeriesDivergence when the
/// integral diverges or the expansion does not converge.
double renyi_entropy_series(const PgduseParams& p, double delta, const SeriesOptions& opts = {});

struct MomentSummary {
  double mean;
  double variance;
  double skewness;
  double kurtosis;  // non-excess
};

MomentSummary moment_summary(const PgduseParams& p, const SeriesOptions& opts = {});

}  // namespace pgdus
