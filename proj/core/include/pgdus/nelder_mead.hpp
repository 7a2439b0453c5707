#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace pgdus {

struct NelderMeadOptions {
  std::size_t max_iters = 5000;
  /// Stop once every vertex lies within step_tol of the best one (max norm).
  double step_tol = 1e-10;
  /// ...or the objective spread falls to f_tol * (1 + |f_best|).
  double f_tol = 1e-16;
  double initial_step = 0.5;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Minimizes f from x0 with the standard reflection/expansion/contraction/
/// shrink simplex moves. Non-finite objective values are treated as +inf.
/// After the first collapse the simplex is rebuilt once around the best
/// point, which guards against stalling on a degenerate simplex.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             const NelderMeadOptions& opts = {});

}  // namespace pgdus
