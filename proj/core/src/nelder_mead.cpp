#include "pgdus/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pgdus {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

struct Simplex {
  std::vector<std::vector<double>> points;
  std::vector<double> values;
};

class CountingObjective {
 public:
  explicit CountingObjective(const Objective& f) : f_(f) {}
  double operator()(std::span<const double> x) {
    ++count;
    const double v = f_(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  }
  std::size_t count = 0;

 private:
  const Objective& f_;
};

Simplex build(CountingObjective& f, const std::vector<double>& origin, double step) {
  const std::size_t n = origin.size();
  Simplex s;
  s.points.assign(n + 1, origin);
  for (std::size_t i = 0; i < n; ++i) s.points[i + 1][i] += step;
  for (const auto& p : s.points) s.values.push_back(f(p));
  return s;
}

// Returns true when the run met its tolerance.
bool run(CountingObjective& f, Simplex& s, const NelderMeadOptions& opts, std::size_t& iters) {
  const std::size_t n = s.points.size() - 1;
  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);

  while (iters < opts.max_iters) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        diameter = std::max(diameter, std::abs(s.points[i][j] - s.points[best][j]));
      }
    }
    const double spread = s.values[worst] - s.values[best];
    if (diameter <= opts.step_tol ||
        (std::isfinite(spread) && spread <= opts.f_tol * (1.0 + std::abs(s.values[best])))) {
      return true;
    }
    ++iters;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i : order) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += s.points[i][j] / static_cast<double>(n);
    }

    const auto& xw = s.points[worst];
    for (std::size_t j = 0; j < n; ++j) trial[j] = centroid[j] + kReflect * (centroid[j] - xw[j]);
    const double fr = f(trial);

    if (fr < s.values[best]) {
      for (std::size_t j = 0; j < n; ++j) trial2[j] = centroid[j] + kExpand * (trial[j] - centroid[j]);
      const double fe = f(trial2);
      if (fe < fr) {
        s.points[worst] = trial2;
        s.values[worst] = fe;
      } else {
        s.points[worst] = trial;
        s.values[worst] = fr;
      }
      continue;
    }
    if (fr < s.values[second]) {
      s.points[worst] = trial;
      s.values[worst] = fr;
      continue;
    }

    // outside contraction when the reflection improved on the worst point
    const bool outside = fr < s.values[worst];
    const auto& toward = outside ? trial : xw;
    for (std::size_t j = 0; j < n; ++j) trial2[j] = centroid[j] + kContract * (toward[j] - centroid[j]);
    const double fc = f(trial2);
    if (fc < (outside ? fr : s.values[worst])) {
      s.points[worst] = trial2;
      s.values[worst] = fc;
      continue;
    }

    const std::vector<double> anchor = s.points[best];
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j) {
        s.points[i][j] = anchor[j] + kShrink * (s.points[i][j] - anchor[j]);
      }
      s.values[i] = f(s.points[i]);
    }
  }
  return false;
}

std::size_t best_index(const Simplex& s) {
  return static_cast<std::size_t>(
      std::min_element(s.values.begin(), s.values.end()) - s.values.begin());
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             const NelderMeadOptions& opts) {
  CountingObjective counted(f);
  NelderMeadResult result;
  if (x0.empty()) {
    result.value = counted(x0);
    result.evaluations = counted.count;
    result.converged = true;
    return result;
  }

  Simplex s = build(counted, x0, opts.initial_step);
  std::size_t iters = 0;
  bool converged = run(counted, s, opts, iters);

  if (converged) {
    const std::size_t b = best_index(s);
    const double before = s.values[b];
    const double restart_step = std::max(opts.initial_step * 1e-3, 100.0 * opts.step_tol);
    Simplex again = build(counted, s.points[b], restart_step);
    converged = run(counted, again, opts, iters);
    if (again.values[best_index(again)] <= before) s = std::move(again);
  }

  const std::size_t b = best_index(s);
  result.x = s.points[b];
  result.value = s.values[b];
  result.iterations = iters;
  result.evaluations = counted.count;
  result.converged = converged;
  return result;
}

}  // namespace pgdus
