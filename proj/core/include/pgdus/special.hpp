#pragma once

#include <complex>
#include <span>

namespace pgdus::special {

/// log Gamma(z) for complex z (Lanczos, g = 7). The imaginary part is not
/// reduced to the principal branch; use it only through exp().
std::complex<double> log_gamma(std::complex<double> z);

/// Beta(a, b) for real a > 0 and complex b with Re b > 0.
std::complex<double> beta(double a, std::complex<double> b);

/// Complete Bell polynomial Y_n(x_1, ..., x_n) with n = x.size().
double complete_bell(std::span<const double> x);

/// integral over (0, 1) of (-log(1 - w))^r * w^(s - 1) dw for s > 0, r >= 0.
double log_moment_integral(int r, double s);

}  // namespace pgdus::special
