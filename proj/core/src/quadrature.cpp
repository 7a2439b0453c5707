#include "pgdus/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <vector>

#include "pgdus/error.hpp"

namespace pgdus {

namespace {

struct Panel {
  double a;
  double b;
};

[[noreturn]] void quad_failure(const std::string& why) { throw Error(Errc::QuadFailure, why); }

QuadResult panel_integral(const Integrand& f, double a, double b, double tol) {
  thread_local boost::math::quadrature::tanh_sinh<double> rule;
  QuadResult r;
  try {
    double l1 = 0.0;
    r.value = rule.integrate(f, a, b, tol, &r.error, &l1);
  } catch (const std::exception& e) {
    quad_failure(std::string("integrand could not be evaluated: ") + e.what());
  }
  r.panels = 1;
  return r;
}

}  // namespace

QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opts) {
  if (!(opts.rel_tol > 0.0)) throw Error(Errc::DomainError, "rel_tol must be positive");
  if (a == b) return {};
  if (!(std::isfinite(a) && std::isfinite(b)) || a > b) {
    throw Error(Errc::DomainError, "integrate needs finite bounds with a <= b");
  }

  std::vector<Panel> pending{{a, b}};
  QuadResult total;
  double magnitude = 0.0;
  while (!pending.empty()) {
    const Panel p = pending.back();
    pending.pop_back();
    const QuadResult r = panel_integral(f, p.a, p.b, opts.rel_tol);
    ++total.panels;
    if (!std::isfinite(r.value) || !std::isfinite(r.error)) {
      quad_failure("non-finite value on [" + std::to_string(p.a) + ", " + std::to_string(p.b) +
                   "]");
    }
    magnitude = std::max(magnitude, std::abs(r.value));
    const double share = (p.b - p.a) / (b - a);
    const double allowed = opts.rel_tol * std::max(magnitude, std::abs(total.value + r.value));
    if (r.error <= std::max(allowed * std::sqrt(share), 1e-300) || p.b - p.a < 1e-12 * (b - a)) {
      total.value += r.value;
      total.error += r.error;
      continue;
    }
    if (total.panels + pending.size() + 2 > opts.max_subdivisions) {
      quad_failure("subdivision budget of " + std::to_string(opts.max_subdivisions) +
                   " panels exhausted");
    }
    const double mid = 0.5 * (p.a + p.b);
    pending.push_back({mid, p.b});
    pending.push_back({p.a, mid});
  }
  return total;
}

QuadResult integrate(const Integrand& f, std::span<const double> breakpoints,
                     const QuadOptions& opts) {
  QuadResult total;
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    const QuadResult r = integrate(f, breakpoints[i - 1], breakpoints[i], opts);
    total.value += r.value;
    total.error += r.error;
    total.panels += r.panels;
  }
  return total;
}

QuadResult integrate_to_infinity(const Integrand& f, double a, const QuadOptions& opts) {
  thread_local boost::math::quadrature::exp_sinh<double> rule;
  QuadResult r;
  try {
    double l1 = 0.0;
    r.value = rule.integrate([&](double x) { return f(x); }, a,
                             std::numeric_limits<double>::infinity(), opts.rel_tol, &r.error,
                             &l1);
  } catch (const std::exception& e) {
    quad_failure(std::string("tail integral failed: ") + e.what());
  }
  if (!std::isfinite(r.value)) quad_failure("non-finite tail integral");
  r.panels = 1;
  return r;
}

}  // namespace pgdus
