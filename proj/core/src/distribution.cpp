#include "pgdus/distribution.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "pgdus/error.hpp"

namespace pgdus {

namespace {

constexpr double kE = std::numbers::e;
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogEm1 = std::log(kE - 1.0);

// 1 - exp(-rate * x), the exponential baseline cdf.
double baseline_cdf(double rate, double x) { return -std::expm1(-rate * x); }

// log(exp(t) - 1) for t >= 0 without cancellation near zero.
double log_expm1(double t) { return t + std::log(-std::expm1(-t)); }

// (power - 1) * log_term, with the convention 0 * (-inf) = 0 so that a unit
// shape never produces NaN at the origin.
double shape_term(double power, double log_term) {
  return power == 1.0 ? 0.0 : (power - 1.0) * log_term;
}

// log of the PGDUSE cdf ratio (e^{t} - 1) / (e - 1), always <= 0.
double pgduse_log_ratio(const PgduseParams& p, double x) {
  return log_expm1(baseline_cdf(p.lambda, x)) - kLogEm1;
}

double pgduse_log_pdf(const PgduseParams& p, double x) {
  const double t = baseline_cdf(p.lambda, x);
  return std::log(p.theta) + std::log(p.lambda) - p.theta * kLogEm1 + (t - p.lambda * x) +
         shape_term(p.theta, log_expm1(t));
}

double gduse_log_pdf(const GduseParams& p, double x) {
  const double log_f = std::log(baseline_cdf(p.beta, x));
  const double y = std::exp(p.alpha * log_f);
  return std::log(p.alpha) + std::log(p.beta) - p.beta * x + shape_term(p.alpha, log_f) + y -
         kLogEm1;
}

void check_probability(double q) {
  if (!(q >= 0.0 && q < 1.0)) {
    throw Error(Errc::DomainError,
                "quantile level must lie in [0, 1), got " + std::to_string(q));
  }
}

}  // namespace

double cdf(const ParamVector& p, double x) {
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  switch (p.kind()) {
    case ModelKind::PGDUSE:
    case ModelKind::DUSE: {
      const PgduseParams q = p.as_pgduse();
      return std::exp(q.theta * pgduse_log_ratio(q, x));
    }
    case ModelKind::GDUSE: {
      const GduseParams g = p.as_gduse();
      const double y = std::pow(baseline_cdf(g.beta, x), g.alpha);
      return std::expm1(y) / (kE - 1.0);
    }
    case ModelKind::KME: {
      const double f = baseline_cdf(p.as_scalar().value, x);
      return -kE * std::expm1(-f) / (kE - 1.0);
    }
    case ModelKind::ED: return baseline_cdf(p.as_scalar().value, x);
  }
  return 0.0;
}

double survival(const ParamVector& p, double x) {
  if (!(x > 0.0)) return 1.0;
  if (std::isinf(x)) return 0.0;
  switch (p.kind()) {
    case ModelKind::PGDUSE:
    case ModelKind::DUSE: {
      const PgduseParams q = p.as_pgduse();
      return -std::expm1(q.theta * pgduse_log_ratio(q, x));
    }
    case ModelKind::GDUSE: {
      const GduseParams g = p.as_gduse();
      const double y = std::pow(baseline_cdf(g.beta, x), g.alpha);
      return -kE * std::expm1(y - 1.0) / (kE - 1.0);
    }
    case ModelKind::KME: {
      const double rate = p.as_scalar().value;
      return std::expm1(std::exp(-rate * x)) / (kE - 1.0);
    }
    case ModelKind::ED: return std::exp(-p.as_scalar().value * x);
  }
  return 1.0;
}

double log_pdf(const ParamVector& p, double x) {
  if (x < 0.0 || std::isnan(x)) return -kInf;
  if (std::isinf(x)) return -kInf;
  switch (p.kind()) {
    case ModelKind::PGDUSE:
    case ModelKind::DUSE: return pgduse_log_pdf(p.as_pgduse(), x);
    case ModelKind::GDUSE: return gduse_log_pdf(p.as_gduse(), x);
    case ModelKind::KME: {
      const double rate = p.as_scalar().value;
      return 1.0 - kLogEm1 + std::log(rate) - rate * x - baseline_cdf(rate, x);
    }
    case ModelKind::ED: {
      const double rate = p.as_scalar().value;
      return std::log(rate) - rate * x;
    }
  }
  return -kInf;
}

double pdf(const ParamVector& p, double x) { return std::exp(log_pdf(p, x)); }

double hazard(const ParamVector& p, double x) {
  if (x < 0.0 || std::isnan(x)) return 0.0;
  const double s = survival(p, x);
  if (s <= 0.0) return kInf;
  return pdf(p, x) / s;
}

double quantile(const ParamVector& p, double q) {
  check_probability(q);
  if (q == 0.0) return 0.0;
  switch (p.kind()) {
    case ModelKind::PGDUSE:
    case ModelKind::DUSE: {
      const PgduseParams g = p.as_pgduse();
      const double root = std::exp(std::log(q) / g.theta);
      return -std::log1p(-std::log1p(root * (kE - 1.0))) / g.lambda;
    }
    case ModelKind::GDUSE: {
      const GduseParams g = p.as_gduse();
      const double f = std::pow(std::log1p(q * (kE - 1.0)), 1.0 / g.alpha);
      return -std::log1p(-f) / g.beta;
    }
    case ModelKind::KME: {
      const double f = -std::log1p(-q * (kE - 1.0) / kE);
      return -std::log1p(-f) / p.as_scalar().value;
    }
    case ModelKind::ED: return -std::log1p(-q) / p.as_scalar().value;
  }
  return 0.0;
}

double median(const PgduseParams& p) { return quantile(make_params(p), 0.5); }

// 52 bits keep the midpoint offset exact: the largest value is 1 - 2^-53.
double unit_open(std::uint64_t word) noexcept {
  return (static_cast<double>(word >> 12) + 0.5) * 0x1.0p-52;
}

std::vector<double> sample(const ParamVector& p, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(quantile(p, unit_open(gen())));
  return out;
}

}  // namespace pgdus
