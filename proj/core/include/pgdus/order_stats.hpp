#pragma once

#include <cstddef>
#include <vector>

#include "pgdus/model.hpp"

namespace pgdus {

/// Rank r of an i.i.d. sample of size n, 1 <= r <= n.
class OrderSpec {
 public:
  /// Throws Error(DomainError) when the bounds do not hold.
  OrderSpec(std::size_t n, std::size_t r);

  std::size_t n() const noexcept { return n_; }
  std::size_t r() const noexcept { return r_; }

 private:
  std::size_t n_;
  std::size_t r_;
};

enum class Topology { Series, Parallel };

/// n!/((r-1)!(n-r)!) G^(r-1) (1-G)^(n-r) g for the PGDUSE G and g.
double order_stat_pdf(const PgduseParams& p, const OrderSpec& spec, double x);

/// sum_{i=r}^{n} C(n,i) G^i (1-G)^(n-i).
double order_stat_cdf(const PgduseParams& p, const OrderSpec& spec, double x);

/// P(exactly i of n components have failed by x), i = 0..n.
std::vector<double> failure_count_distribution(const PgduseParams& p, std::size_t n, double x);

/// A series system fails with its first component (r = 1), a parallel
/// system with its last (r = n).
double system_lifetime_cdf(const PgduseParams& p, std::size_t n, Topology topology, double t);

}  // namespace pgdus
