#include "pgdus/analytic.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>
#include <vector>

#include "pgdus/distribution.hpp"
#include "pgdus/error.hpp"
#include "pgdus/special.hpp"

namespace pgdus {

namespace {

constexpr double kE = std::numbers::e;
const double kLogEm1 = std::log(kE - 1.0);
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Largest binomial exponent for which Automatic still tries the
// terminating binomial expansion.
constexpr double kMaxBinomialExponent = 16.0;
// Relative accuracy the binomial sum must retain after cancellation.
constexpr double kCancellationLimit = 1e-9;

[[noreturn]] void diverged(const std::string& what) {
  throw Error(Errc::SeriesDivergence, what);
}

bool is_nonnegative_integer(double v) { return v >= 0.0 && v == std::floor(v); }

// Two consecutive terms below tolerance, the stopping rule for every sum.
class Truncation {
 public:
  explicit Truncation(double tol) : tol_(tol) {}
  bool small(double magnitude) {
    run_ = magnitude < tol_ ? run_ + 1 : 0;
    return run_ >= 2;
  }

 private:
  double tol_;
  int run_ = 0;
};

std::size_t inner_limit(const SeriesOptions& opts, double c) {
  return opts.max_terms + 2 * static_cast<std::size_t>(std::ceil(std::abs(c))) + 32;
}

// e^{b} sum_m (-b)^m / (m! (1+m)^(r+1)).
// For b < 0 the terms are Poisson weights and summed as written. For b > 0
// the alternating sum is replaced by the equivalent positive expansion
// (1/r!) sum_j b^j/j! L_r(j+1), L_r the log-moment integral.
double log_moment_inner(double b, int r, const SeriesOptions& opts) {
  const std::size_t limit = inner_limit(opts, b);
  double sum = 0.0;
  Truncation stop(opts.abs_tol);
  if (b == 0.0) return 1.0;
  if (b < 0.0) {
    const double a = -b;
    const double log_a = std::log(a);
    for (std::size_t m = 0; m < limit; ++m) {
      const double md = static_cast<double>(m);
      const double weight = std::exp(-a + md * log_a - std::lgamma(md + 1.0));
      const double term = weight / std::pow(md + 1.0, r + 1);
      sum += term;
      if (md > a && stop.small(term)) return sum;
    }
    diverged("log-moment inner sum did not converge for b = " + std::to_string(b));
  }
  const double r_fact = std::tgamma(r + 1.0);
  double coeff = 1.0;  // b^j / j!
  for (std::size_t j = 0; j < limit; ++j) {
    const double jd = static_cast<double>(j);
    const double term = coeff * special::log_moment_integral(r, jd + 1.0) / r_fact;
    sum += term;
    if (jd > b && stop.small(std::abs(term))) return sum;
    coeff *= b / (jd + 1.0);
  }
  diverged("log-moment inner sum did not converge for b = " + std::to_string(b));
}

// E(c, s) = e^{c} sum_m (-c)^m / (m! (m + s)) = integral_0^1 v^{s-1} e^{c(1-v)} dv.
// c < 0: Poisson-weighted form as written. c > 0: Kummer's transformation
// sum_j c^j / (s (s+1) ... (s+j)), whose terms are all of one sign.
template <class T>
T exp_beta_inner(double c, T s, const SeriesOptions& opts) {
  const std::size_t limit = inner_limit(opts, c);
  T sum{};
  Truncation stop(opts.abs_tol);
  if (c == 0.0) return 1.0 / s;
  if (c < 0.0) {
    const double a = -c;
    const double log_a = std::log(a);
    for (std::size_t m = 0; m < limit; ++m) {
      const double md = static_cast<double>(m);
      const double weight = std::exp(-a + md * log_a - std::lgamma(md + 1.0));
      const T term = weight / (md + s);
      sum += term;
      if (md > a && stop.small(std::abs(term))) return sum;
    }
    diverged("exp-beta inner sum did not converge for c = " + std::to_string(c));
  }
  T term = 1.0 / s;
  for (std::size_t j = 0; j < limit; ++j) {
    sum += term;
    if (static_cast<double>(j) > c && stop.small(std::abs(term))) return sum;
    term *= c / (s + static_cast<double>(j + 1));
  }
  diverged("exp-beta inner sum did not converge for c = " + std::to_string(c));
}

struct BinomialOutcome {
  bool ok = false;
  std::string failure;
};

// sum_k C(exponent, k) (-1)^k inner(k). Terminates exactly when exponent
// is a nonnegative integer. Reports heavy cancellation instead of
// returning an inaccurate value.
template <class T, class Inner>
BinomialOutcome binomial_sum(double exponent, Inner inner, const SeriesOptions& opts, T& out) {
  T sum{};
  double magnitude = 0.0;
  double coeff = 1.0;
  Truncation stop(opts.abs_tol);
  bool converged = false;
  for (std::size_t k = 0; k < opts.max_terms; ++k) {
    if (coeff == 0.0) {
      converged = true;
      break;
    }
    const T term = coeff * inner(static_cast<double>(k));
    sum += term;
    magnitude += std::abs(term);
    if (stop.small(std::abs(term))) {
      converged = true;
      break;
    }
    const double kd = static_cast<double>(k);
    coeff *= (kd - exponent) / (kd + 1.0);
  }
  if (!converged) {
    return {false, "binomial expansion with exponent " + std::to_string(exponent) +
                       " did not reach tolerance within " + std::to_string(opts.max_terms) +
                       " terms"};
  }
  if (magnitude * 8.0 * kEps > kCancellationLimit * std::abs(sum)) {
    return {false, "binomial expansion lost accuracy to cancellation"};
  }
  out = sum;
  return {true, {}};
}

// Taylor coefficients of e^{gamma w} ((e^w - 1)/w)^alpha, n of them.
std::vector<double> remainder_coefficients(double alpha, double gamma, std::size_t n) {
  std::vector<double> h(n, 0.0);
  double fact = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    fact *= static_cast<double>(k + 1);
    h[k] = 1.0 / fact;  // 1/(k+1)!
  }
  std::vector<double> power(n, 0.0);
  power[0] = 1.0;
  for (std::size_t m = 1; m < n; ++m) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= m; ++k) {
      acc += ((alpha + 1.0) * static_cast<double>(k) - static_cast<double>(m)) * h[k] *
             power[m - k];
    }
    power[m] = acc / static_cast<double>(m);
  }
  std::vector<double> out(n, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    double coeff = 1.0;  // gamma^k / k!
    double acc = 0.0;
    for (std::size_t k = 0; k <= m; ++k) {
      acc += coeff * power[m - k];
      coeff *= gamma / static_cast<double>(k + 1);
    }
    out[m] = acc;
  }
  return out;
}

// sum_j D_j term(j) with D_j the remainder coefficients.
template <class T, class Term>
T regularized_sum(double alpha, double gamma, Term term, const SeriesOptions& opts) {
  const std::vector<double> d = remainder_coefficients(alpha, gamma, opts.max_terms);
  T sum{};
  Truncation stop(opts.abs_tol);
  for (std::size_t j = 0; j < d.size(); ++j) {
    const T t = d[j] * term(j);
    sum += t;
    if (stop.small(std::abs(t))) return sum;
  }
  diverged("regularized expansion did not reach tolerance within " +
           std::to_string(opts.max_terms) + " terms");
}

void check_series_options(const SeriesOptions& opts) {
  if (!(opts.abs_tol > 0.0) || opts.max_terms < 1) {
    throw Error(Errc::DomainError, "series options need abs_tol > 0 and max_terms >= 1");
  }
}

bool try_binomial(const SeriesOptions& opts, double exponent) {
  switch (opts.method) {
    case SeriesMethod::Binomial: return true;
    case SeriesMethod::Regularized: return false;
    case SeriesMethod::Automatic:
      return is_nonnegative_integer(exponent) && exponent <= kMaxBinomialExponent;
  }
  return false;
}

// Shared by mgf (real s) and cf (complex s), s = 1 - t/lambda:
// theta/(e-1)^theta * integral_0^1 v^{s-1} e^w (e^w - 1)^(theta-1) dv.
template <class T>
T transform_series(const PgduseParams& p, T s, const SeriesOptions& opts) {
  const double scale = p.theta * std::exp(-p.theta * kLogEm1);
  const double exponent = p.theta - 1.0;
  if (try_binomial(opts, exponent)) {
    T sum{};
    const auto outcome = binomial_sum<T>(
        exponent, [&](double k) { return exp_beta_inner<T>(p.theta - k, s, opts); }, opts, sum);
    if (outcome.ok) return scale * sum;
    if (opts.method == SeriesMethod::Binomial) diverged(outcome.failure);
  }
  // integral_0^1 w^{theta-1+j} (1-w)^{s-1} dw = B(theta + j, s), by recurrence in j.
  T beta{};
  if constexpr (std::is_same_v<T, double>) {
    beta = special::beta(p.theta, s).real();
  } else {
    beta = special::beta(p.theta, s);
  }
  std::size_t next = 0;
  const T sum = regularized_sum<T>(
      exponent, 1.0,
      [&](std::size_t j) {
        while (next < j) {
          const double a = p.theta + static_cast<double>(next);
          beta *= a / (a + s);
          ++next;
        }
        return beta;
      },
      opts);
  return scale * sum;
}

double tail_rate(const ParamVector& p) {
  switch (p.kind()) {
    case ModelKind::PGDUSE:
    case ModelKind::DUSE: return p.as_pgduse().lambda;
    case ModelKind::GDUSE: return p.as_gduse().beta;
    case ModelKind::KME:
    case ModelKind::ED: return p.as_scalar().value;
  }
  return 1.0;
}

double upper_bound(const ParamVector& p) { return quantile(p, 1.0 - 1e-12); }

// integral_0^inf g(x) pdf(x) dx as log-domain integrand exp(log_g + log_pdf).
double expectation(const ParamVector& p, const std::function<double(double)>& log_g,
                   const QuadOptions& opts) {
  const double hi = upper_bound(p);
  const std::array<double, 3> cuts{0.0, quantile(p, 0.5), hi};
  const Integrand f = [&](double x) {
    const double lp = log_pdf(p, x);
    return lp == -std::numeric_limits<double>::infinity() ? 0.0 : std::exp(log_g(x) + lp);
  };
  return integrate(f, cuts, opts).value + integrate_to_infinity(f, hi, opts).value;
}

void check_order(int r) {
  if (r < 1) throw Error(Errc::DomainError, "moment order must be >= 1, got " + std::to_string(r));
}

void check_delta(double delta) {
  if (!(delta > 0.0) || delta == 1.0 || !std::isfinite(delta)) {
    throw Error(Errc::DomainError,
                "Renyi order must be positive and different from 1, got " + std::to_string(delta));
  }
}

}  // namespace

double raw_moment_series(const PgduseParams& params, int r, const SeriesOptions& opts) {
  const PgduseParams p = checked(params);
  check_order(r);
  check_series_options(opts);
  const double exponent = p.theta - 1.0;
  const double lambda_r = std::pow(p.lambda, r);
  if (try_binomial(opts, exponent)) {
    double sum = 0.0;
    const auto outcome = binomial_sum<double>(
        exponent, [&](double k) { return log_moment_inner(p.theta - k, r, opts); }, opts, sum);
    if (outcome.ok) {
      return p.theta * std::tgamma(r + 1.0) * std::exp(-p.theta * kLogEm1) * sum / lambda_r;
    }
    if (opts.method == SeriesMethod::Binomial) diverged(outcome.failure);
  }
  const double sum = regularized_sum<double>(
      exponent, 1.0,
      [&](std::size_t j) {
        return special::log_moment_integral(r, p.theta + static_cast<double>(j));
      },
      opts);
  return p.theta * std::exp(-p.theta * kLogEm1) * sum / lambda_r;
}

double raw_moment_quadrature(const ParamVector& p, int r, const QuadOptions& opts) {
  check_order(r);
  return expectation(
      p, [r](double x) { return x > 0.0 ? r * std::log(x) : -std::numeric_limits<double>::infinity(); },
      opts);
}

double mgf(const PgduseParams& params, double t, const SeriesOptions& opts) {
  const PgduseParams p = checked(params);
  check_series_options(opts);
  if (!(t < p.lambda)) {
    throw Error(Errc::DomainError, "mgf requires t < lambda (" + std::to_string(p.lambda) +
                                       "), got " + std::to_string(t));
  }
  return transform_series<double>(p, 1.0 - t / p.lambda, opts);
}

double mgf_quadrature(const ParamVector& p, double t, const QuadOptions& opts) {
  if (!(t < tail_rate(p))) {
    throw Error(Errc::DomainError, "mgf diverges for t >= " + std::to_string(tail_rate(p)));
  }
  return expectation(p, [t](double x) { return t * x; }, opts);
}

ComplexValue cf(const PgduseParams& params, double t, const SeriesOptions& opts) {
  const PgduseParams p = checked(params);
  check_series_options(opts);
  if (t == 0.0) return {1.0, 0.0};
  return transform_series<ComplexValue>(p, ComplexValue(1.0, -t / p.lambda), opts);
}

ComplexValue cf_quadrature(const ParamVector& p, double t, const QuadOptions& opts) {
  const double hi = upper_bound(p);
  std::vector<double> cuts{0.0};
  if (std::abs(t) > tail_rate(p)) {
    const double step = std::numbers::pi / (2.0 * std::abs(t));
    for (double x = step; x < hi; x += step) cuts.push_back(x);
  } else {
    cuts.push_back(quantile(p, 0.5));
  }
  cuts.push_back(hi);
  const double re = integrate([&](double x) { return std::cos(t * x) * pdf(p, x); }, cuts, opts).value;
  const double im = integrate([&](double x) { return std::sin(t * x) * pdf(p, x); }, cuts, opts).value;
  return {re, im};
}

ComplexValue cgf(const PgduseParams& p, double t, const SeriesOptions& opts) {
  const ComplexValue phi = cf(p, t, opts);
  if (std::abs(phi) < 1e-300) {
    throw Error(Errc::LogOfZero, "characteristic function vanishes at t = " + std::to_string(t));
  }
  if (t == 0.0) return {0.0, 0.0};
  return std::log(phi);
}

double renyi_entropy(const ParamVector& p, double delta, const QuadOptions& opts) {
  check_delta(delta);
  // pdf behaves like C x^e near the origin; pdf^delta is integrable there
  // only when delta * e > -1.
  const double scale = quantile(p, 0.5);
  const double x1 = 1e-200 * scale;
  const double x2 = 1e-100 * scale;
  const double local_exponent = (log_pdf(p, x2) - log_pdf(p, x1)) / (std::log(x2) - std::log(x1));
  if (delta * local_exponent <= -1.0 + 1e-6) {
    throw Error(Errc::QuadFailure, "pdf^" + std::to_string(delta) +
                                       " is not integrable at the origin (local exponent " +
                                       std::to_string(local_exponent) + ")");
  }
  const double integral = expectation(
      p, [&](double x) { return (delta - 1.0) * log_pdf(p, x); }, opts);
  if (!(integral > 0.0) || !std::isfinite(integral)) {
    throw Error(Errc::QuadFailure, "integral of pdf^delta is not a positive finite number");
  }
  return std::log(integral) / (1.0 - delta);
}

double renyi_entropy_series(const PgduseParams& params, double delta, const SeriesOptions& opts) {
  const PgduseParams p = checked(params);
  check_delta(delta);
  check_series_options(opts);
  const double exponent = delta * (p.theta - 1.0);
  if (exponent <= -1.0) {
    diverged("integral of pdf^delta diverges at the origin (delta (theta - 1) = " +
             std::to_string(exponent) + ")");
  }
  // log of (theta lambda / (e-1)^theta)^delta / lambda
  const double log_scale =
      delta * (std::log(p.theta) + std::log(p.lambda) - p.theta * kLogEm1) - std::log(p.lambda);

  double sum = 0.0;
  bool have = false;
  if (try_binomial(opts, exponent)) {
    const auto outcome = binomial_sum<double>(
        exponent,
        [&](double k) { return exp_beta_inner<double>(delta + exponent - k, delta, opts); }, opts,
        sum);
    have = outcome.ok;
    if (!have && opts.method == SeriesMethod::Binomial) diverged(outcome.failure);
  }
  if (!have) {
    // integral_0^1 w^{exponent + j} (1-w)^{delta-1} dw = B(exponent + 1 + j, delta)
    double beta = special::beta(exponent + 1.0, delta).real();
    std::size_t next = 0;
    sum = regularized_sum<double>(
        exponent, delta,
        [&](std::size_t j) {
          while (next < j) {
            const double a = exponent + 1.0 + static_cast<double>(next);
            beta *= a / (a + delta);
            ++next;
          }
          return beta;
        },
        opts);
  }
  if (!(sum > 0.0)) diverged("series for the integral of pdf^delta is not positive");
  return (log_scale + std::log(sum)) / (1.0 - delta);
}

MomentSummary moment_summary(const PgduseParams& p, const SeriesOptions& opts) {
  const double m1 = raw_moment_series(p, 1, opts);
  const double m2 = raw_moment_series(p, 2, opts);
  const double m3 = raw_moment_series(p, 3, opts);
  const double m4 = raw_moment_series(p, 4, opts);
  const double var = m2 - m1 * m1;
  const double c3 = m3 - 3.0 * m1 * m2 + 2.0 * m1 * m1 * m1;
  const double c4 = m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1 * m1 * m1 * m1;
  return {m1, var, c3 / std::pow(var, 1.5), c4 / (var * var)};
}

}  // namespace pgdus
