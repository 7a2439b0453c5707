#include "pgdus/special.hpp"

#include <array>
#include <boost/math/special_functions/polygamma.hpp>
#include <cmath>
#include <numbers>
#include <vector>

namespace pgdus::special {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  using std::numbers::pi;
  if (z.real() < 0.5) {
    return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma(1.0 - z);
  }
  z -= 1.0;
  std::complex<double> series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    series += kLanczos[i] / (z + static_cast<double>(i));
  }
  const std::complex<double> t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

std::complex<double> beta(double a, std::complex<double> b) {
  if (b.imag() == 0.0) {
    return std::exp(std::lgamma(a) + std::lgamma(b.real()) - std::lgamma(a + b.real()));
  }
  return std::exp(std::lgamma(a) + log_gamma(b) - log_gamma(a + b));
}

double complete_bell(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> y(n + 1, 0.0);
  y[0] = 1.0;
  for (std::size_t m = 0; m < n; ++m) {
    double binom = 1.0;
    double acc = 0.0;
    for (std::size_t i = 0; i <= m; ++i) {
      acc += binom * y[m - i] * x[i];
      binom = binom * static_cast<double>(m - i) / static_cast<double>(i + 1);
    }
    y[m + 1] = acc;
  }
  return y[n];
}

// Derivatives of log B(b, s) in b at b = 1 give the cumulant-like terms
// x_k = (-1)^k [psi^(k-1)(1) - psi^(k-1)(1 + s)]; the integral is
// B(1, s) * Y_r(x_1..x_r) with B(1, s) = 1/s.
double log_moment_integral(int r, double s) {
  if (r == 0) return 1.0 / s;
  std::vector<double> x(static_cast<std::size_t>(r));
  for (int k = 1; k <= r; ++k) {
    const double diff = boost::math::polygamma(k - 1, 1.0) - boost::math::polygamma(k - 1, 1.0 + s);
    x[static_cast<std::size_t>(k - 1)] = (k % 2 == 0) ? diff : -diff;
  }
  return complete_bell(x) / s;
}

}  // namespace pgdus::special
