#include "pgdus/order_stats.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pgdus/distribution.hpp"
#include "pgdus/error.hpp"

namespace pgdus {

namespace {

double log_binomial(std::size_t n, std::size_t k) {
  const auto nd = static_cast<double>(n);
  const auto kd = static_cast<double>(k);
  return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
}

// k * log(v), with 0 * log(0) taken as 0.
double power_term(std::size_t k, double log_v) {
  return k == 0 ? 0.0 : static_cast<double>(k) * log_v;
}

}  // namespace

OrderSpec::OrderSpec(std::size_t n, std::size_t r) : n_(n), r_(r) {
  if (n < 1 || r < 1 || r > n) {
    throw Error(Errc::DomainError, "order statistic needs 1 <= r <= n, got n = " +
                                       std::to_string(n) + ", r = " + std::to_string(r));
  }
}

double order_stat_pdf(const PgduseParams& params, const OrderSpec& spec, double x) {
  const ParamVector p = make_params(params);
  if (x < 0.0) return 0.0;
  const double log_g = log_pdf(p, x);
  if (log_g == -std::numeric_limits<double>::infinity()) return 0.0;
  const double log_c = std::lgamma(static_cast<double>(spec.n()) + 1.0) -
                       std::lgamma(static_cast<double>(spec.r())) -
                       std::lgamma(static_cast<double>(spec.n() - spec.r()) + 1.0);
  return std::exp(log_c + power_term(spec.r() - 1, std::log(cdf(p, x))) +
                  power_term(spec.n() - spec.r(), std::log(survival(p, x))) + log_g);
}

std::vector<double> failure_count_distribution(const PgduseParams& params, std::size_t n,
                                               double x) {
  const ParamVector p = make_params(params);
  const double g = cdf(p, x);
  const double s = survival(p, x);
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    out[i] = std::exp(log_binomial(n, i)) * std::pow(g, static_cast<double>(i)) *
             std::pow(s, static_cast<double>(n - i));
  }
  return out;
}

double order_stat_cdf(const PgduseParams& p, const OrderSpec& spec, double x) {
  const std::vector<double> counts = failure_count_distribution(p, spec.n(), x);
  double sum = 0.0;
  for (std::size_t i = spec.r(); i <= spec.n(); ++i) sum += counts[i];
  return std::min(sum, 1.0);
}

double system_lifetime_cdf(const PgduseParams& p, std::size_t n, Topology topology, double t) {
  const std::size_t r = topology == Topology::Series ? 1 : n;
  return order_stat_cdf(p, OrderSpec(n, r), t);
}

}  // namespace pgdus
