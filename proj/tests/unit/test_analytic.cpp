#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "pgdus/analytic.hpp"
#include "pgdus/distribution.hpp"
#include "pgdus/error.hpp"
#include "pgdus/special.hpp"

using namespace pgdus;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kE = std::numbers::e;

// The two-sum theta = 2 forms, written out directly.
double moment_theta2(double lambda, int r) {
  double a = 0.0, b = 0.0, fact = 1.0, pow2 = 1.0;
  for (int m = 0; m < 60; ++m) {
    if (m > 0) {
      fact *= m;
      pow2 *= -2.0;
    }
    const double denom = fact * std::pow(1.0 + m, r + 1);
    a += pow2 / denom;
    b += ((m % 2) ? -1.0 : 1.0) / denom;
  }
  double r_fact = 1.0;
  for (int i = 2; i <= r; ++i) r_fact *= i;
  return 2.0 * kE / ((kE - 1.0) * (kE - 1.0)) * r_fact / std::pow(lambda, r) * (kE * a - b);
}

std::complex<double> mgf_theta2(double lambda, std::complex<double> t) {
  std::complex<double> a = 0.0, b = 0.0;
  double fact = 1.0, pow2 = 1.0;
  for (int m = 0; m < 60; ++m) {
    if (m > 0) {
      fact *= m;
      pow2 *= -2.0;
    }
    const std::complex<double> denom = fact * (lambda + lambda * m - t);
    a += pow2 / denom;
    b += ((m % 2) ? -1.0 : 1.0) / denom;
  }
  return 2.0 * lambda * kE / ((kE - 1.0) * (kE - 1.0)) * (kE * a - b);
}

const std::vector<double> kLambdas{0.5, 1.0, 2.0};
const std::vector<double> kThetas{0.5, 1.0, 2.0, 5.0};

}  // namespace

TEST_CASE("raw moments against frozen values", "[analytic]") {
  CHECK_THAT(raw_moment_series({1.0, 1.0}, 1), WithinRel(oracle::frozen::kMean_l1_t1, 1e-9));
  CHECK_THAT(raw_moment_series({1.0, 2.0}, 1), WithinRel(oracle::frozen::kMean_l1_t2, 1e-9));
  for (int r = 1; r <= 4; ++r) {
    CHECK_THAT(raw_moment_series({1.0, 0.5}, r),
               WithinRel(oracle::frozen::kMoments_l1_t05[r - 1], 1e-12));
  }
  CHECK_THAT(raw_moment_series({2.0, 1.0}, 1), WithinRel(0.5 * raw_moment_series({1.0, 1.0}, 1), 1e-14));
}

TEST_CASE("theta = 2 series matches the two-sum form", "[analytic]") {
  for (double l : kLambdas) {
    for (int r = 1; r <= 4; ++r) {
      for (auto method : {SeriesMethod::Binomial, SeriesMethod::Regularized}) {
        CHECK_THAT(raw_moment_series({l, 2.0}, r, {1e-14, 200, method}),
                   WithinRel(moment_theta2(l, r), 1e-11));
      }
    }
    for (double t : {-1.0, 0.0, 0.4 * l}) {
      CHECK_THAT(mgf({l, 2.0}, t), WithinRel(mgf_theta2(l, t).real(), 1e-11));
    }
    const auto c = cf({l, 2.0}, 1.0);
    const auto want = mgf_theta2(l, {0.0, 1.0});
    CHECK_THAT(c.real(), WithinAbs(want.real(), 1e-11));
    CHECK_THAT(c.imag(), WithinAbs(want.imag(), 1e-11));
  }
}

TEST_CASE("binomial and regularized expansions agree", "[analytic]") {
  for (double l : kLambdas) {
    for (double t : {1.0, 2.0, 3.0, 5.0}) {
      for (int r = 1; r <= 4; ++r) {
        const double a = raw_moment_series({l, t}, r, {1e-13, 200, SeriesMethod::Binomial});
        const double b = raw_moment_series({l, t}, r, {1e-13, 200, SeriesMethod::Regularized});
        CHECK_THAT(a, WithinRel(b, 1e-10));
      }
    }
  }
}

TEST_CASE("series agree with quadrature on the validation grid", "[analytic][property]") {
  for (double l : kLambdas) {
    for (double t : kThetas) {
      const PgduseParams pp{l, t};
      const auto p = make_params(pp);
      for (int r = 1; r <= 4; ++r) {
        CHECK_THAT(raw_moment_series(pp, r), WithinRel(raw_moment_quadrature(p, r), 1e-6));
      }
      for (double s : {-1.0, 0.0, 0.4 * l}) {
        CHECK_THAT(mgf(pp, s), WithinRel(mgf_quadrature(p, s), 1e-6));
      }
      for (double s : {0.0, 1.0}) {
        const auto a = cf(pp, s);
        const auto b = cf_quadrature(p, s);
        CHECK_THAT(a.real(), WithinAbs(b.real(), 1e-6 * std::abs(b)));
        CHECK_THAT(a.imag(), WithinAbs(b.imag(), 1e-6 * std::abs(b)));
        CHECK(std::abs(a) <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("generating functions at the origin", "[analytic][property]") {
  for (double l : kLambdas) {
    for (double t : kThetas) {
      CHECK_THAT(mgf({l, t}, 0.0), WithinAbs(1.0, 1e-10));
      const auto c = cf({l, t}, 0.0);
      CHECK_THAT(c.real(), WithinAbs(1.0, 1e-10));
      CHECK_THAT(c.imag(), WithinAbs(0.0, 1e-10));
      CHECK(std::abs(cgf({l, t}, 0.0)) <= 1e-10);
    }
  }
}

TEST_CASE("mgf and cf against frozen values", "[analytic]") {
  CHECK_THAT(mgf({1.0, 2.0}, 0.4), WithinRel(oracle::frozen::kMgf_l1_t2_s04, 1e-11));
  CHECK_THAT(mgf({0.5, 0.5}, -1.0), WithinRel(oracle::frozen::kMgf_l05_t05_sm1, 1e-11));
  const auto c = cf({1.0, 2.0}, 1.0);
  CHECK_THAT(c.real(), WithinAbs(oracle::frozen::kCfRe_l1_t2_s1, 1e-12));
  CHECK_THAT(c.imag(), WithinAbs(oracle::frozen::kCfIm_l1_t2_s1, 1e-12));
  const auto k = cgf({1.0, 2.0}, 1.0);
  CHECK_THAT(std::exp(k).real(), WithinAbs(c.real(), 1e-12));
  CHECK_THAT(std::exp(k).imag(), WithinAbs(c.imag(), 1e-12));
}

TEST_CASE("mgf domain", "[analytic]") {
  CHECK_THROWS_AS(mgf({1.0, 1.0}, 1.0), Error);
  CHECK_THROWS_AS(mgf({1.0, 1.0}, 1.5), Error);
  CHECK(std::isfinite(mgf({1.0, 1.0}, 0.5)));
  CHECK_THAT(mgf({1.0, 1.0}, 0.5), WithinRel(mgf_quadrature(make_params(PgduseParams{1.0, 1.0}), 0.5), 1e-6));
}

TEST_CASE("moment scaling and variance", "[analytic][property]") {
  for (double t : kThetas) {
    for (int r = 1; r <= 4; ++r) {
      const double ref = raw_moment_series({1.0, t}, r);
      for (double l : kLambdas) {
        CHECK_THAT(raw_moment_series({l, t}, r) * std::pow(l, r), WithinRel(ref, 1e-9));
      }
    }
    for (double l : kLambdas) {
      const auto s = moment_summary({l, t});
      CHECK(s.variance > 0.0);
      CHECK(s.kurtosis > 1.0);
    }
  }
  CHECK_THAT(moment_summary({1.0, 1.0}).variance, WithinRel(oracle::frozen::kVariance_l1_t1, 1e-9));
}

TEST_CASE("truncation is stable as max_terms grows", "[analytic][property]") {
  for (double t : kThetas) {
    const double base = raw_moment_series({1.0, t}, 2, {1e-12, 200});
    for (std::size_t terms : {300u, 500u, 1000u}) {
      CHECK_THAT(raw_moment_series({1.0, t}, 2, {1e-12, terms}), WithinAbs(base, 1e-12));
    }
  }
}

TEST_CASE("forced binomial expansion reports non-termination", "[analytic]") {
  CHECK_THROWS_AS(raw_moment_series({1.0, 0.5}, 1, {1e-12, 50, SeriesMethod::Binomial}), Error);
}

TEST_CASE("quadrature moments of the exponential", "[analytic]") {
  const auto ed = make_params(ModelKind::ED, {1.0});
  CHECK_THAT(raw_moment_quadrature(ed, 1), WithinAbs(1.0, 1e-9));
  CHECK_THAT(raw_moment_quadrature(ed, 2), WithinAbs(2.0, 1e-9));
  CHECK_THAT(renyi_entropy(ed, 2.0), WithinAbs(std::log(2.0), 1e-9));
}

TEST_CASE("Renyi entropy", "[analytic]") {
  // theta = 1, delta = 2 reduces to -log[(e/(e-1))^2 (1 - 3e^-2)/4].
  const double closed = -std::log(std::pow(kE / (kE - 1.0), 2) * (1.0 - 3.0 / (kE * kE)) / 4.0);
  CHECK_THAT(closed, WithinRel(oracle::frozen::kRenyi_l1_t1_d2, 1e-9));
  CHECK_THAT(renyi_entropy(make_params(PgduseParams{1.0, 1.0}), 2.0), WithinRel(closed, 1e-9));
  CHECK_THAT(renyi_entropy_series({1.0, 1.0}, 2.0), WithinRel(closed, 1e-9));
  CHECK_THAT(renyi_entropy_series({2.0, 5.0}, 0.5), WithinRel(oracle::frozen::kRenyi_l2_t5_d05, 1e-9));
  CHECK_THAT(renyi_entropy_series({0.5, 2.0}, 3.0), WithinRel(oracle::frozen::kRenyi_l05_t2_d3, 1e-9));
  for (double d : {0.5, 2.0}) {
    CHECK_THAT(renyi_entropy_series({1.0, 2.0}, d),
               WithinAbs(renyi_entropy(make_params(PgduseParams{1.0, 2.0}), d), 1e-5));
  }
  // Scaling x -> x/2 shifts the entropy by -log 2.
  for (double t : {0.5, 2.0, 5.0}) {
    CHECK_THAT(renyi_entropy(make_params(PgduseParams{2.0, t}), 0.5),
               WithinAbs(renyi_entropy(make_params(PgduseParams{1.0, t}), 0.5) - std::log(2.0), 1e-9));
  }
  CHECK_THROWS_AS(renyi_entropy(make_params(PgduseParams{1.0, 1.0}), 1.0), Error);
  CHECK_THROWS_AS(renyi_entropy(make_params(PgduseParams{1.0, 1.0}), -1.0), Error);
}

TEST_CASE("Renyi entropy grid: series vs quadrature", "[analytic][property]") {
  for (double l : kLambdas) {
    for (double t : kThetas) {
      for (double d : {0.5, 2.0, 3.0}) {
        const auto p = make_params(PgduseParams{l, t});
        if (d * (1.0 - t) >= 1.0) {
          // pdf^delta ~ x^(delta (theta - 1)) at the origin is not integrable
          CHECK_THROWS_AS(renyi_entropy(p, d), Error);
          CHECK_THROWS_AS(renyi_entropy_series({l, t}, d), Error);
          continue;
        }
        const double q = renyi_entropy(p, d);
        CHECK_THAT(renyi_entropy_series({l, t}, d), WithinAbs(q, 1e-5 * std::max(1.0, std::abs(q))));
      }
    }
  }
}

TEST_CASE("special functions", "[analytic][special]") {
  using special::beta;
  using special::complete_bell;
  using special::log_gamma;
  CHECK_THAT(std::exp(log_gamma({5.0, 0.0})).real(), WithinRel(24.0, 1e-13));
  CHECK_THAT(std::exp(log_gamma({0.5, 0.0})).real(), WithinRel(std::sqrt(std::numbers::pi), 1e-13));
  // |Gamma(i)|^2 = pi / sinh(pi)
  CHECK_THAT(std::norm(std::exp(log_gamma({0.0, 1.0}))),
             WithinRel(std::numbers::pi / std::sinh(std::numbers::pi), 1e-12));
  CHECK_THAT(beta(2.0, {3.0, 0.0}).real(), WithinRel(1.0 / 12.0, 1e-13));
  const std::vector<double> ones{1.0, 1.0, 1.0, 1.0};
  CHECK(complete_bell(ones) == Catch::Approx(15.0));  // Bell number B_4
  CHECK(complete_bell(std::span<const double>{}) == 1.0);
  // integral of -log(1 - w) over (0, 1) is 1; with w^(s-1), s = 1, r = 2 it is 2
  CHECK_THAT(special::log_moment_integral(1, 1.0), WithinRel(1.0, 1e-13));
  CHECK_THAT(special::log_moment_integral(2, 1.0), WithinRel(2.0, 1e-13));
  CHECK_THAT(special::log_moment_integral(3, 2.5), WithinRel(oracle::frozen::kLogMoment_r3_s25, 1e-12));
}

TEST_CASE("adaptive quadrature", "[analytic][quadrature]") {
  CHECK_THAT(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi).value,
             WithinRel(2.0, 1e-12));
  CHECK_THAT(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 4.0).value,
             WithinRel(4.0, 1e-10));
  CHECK_THAT(integrate_to_infinity([](double x) { return std::exp(-x); }, 1.0).value,
             WithinRel(std::exp(-1.0), 1e-10));
  QuadOptions tight{1e-14, 2};
  CHECK_THROWS_AS(integrate([](double x) { return std::abs(std::sin(40.0 * x)); }, 0.0, 10.0, tight),
                  Error);
}
