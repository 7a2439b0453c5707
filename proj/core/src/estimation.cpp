#include "pgdus/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "pgdus/distribution.hpp"
#include "pgdus/error.hpp"
#include "pgdus/nelder_mead.hpp"

namespace pgdus {

namespace {

constexpr double kLogStep = 1e-5;
const double kLogEm1 = std::log(std::numbers::e - 1.0);

// log(e^t - 1) for t > 0.
double log_expm1(double t) { return t + std::log(-std::expm1(-t)); }

double scaled_norm(const std::array<double, 2>& g, std::size_t dim, double log_l) {
  double s = 0.0;
  for (std::size_t i = 0; i < dim; ++i) s += g[i] * g[i];
  return std::sqrt(s) / (1.0 + std::abs(log_l));
}

// Empty when exp(log_p) leaves the valid parameter range.
std::optional<ParamVector> to_params(ModelKind kind, std::span<const double> log_p) {
  std::array<double, 2> raw{};
  for (std::size_t i = 0; i < log_p.size(); ++i) raw[i] = std::exp(log_p[i]);
  try {
    return validate_params(kind, std::span<const double>(raw.data(), log_p.size()));
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::array<double, 2> finite_difference_score(const ParamVector& p, const Dataset& data) {
  const std::size_t dim = p.size();
  std::array<double, 2> g{};
  std::vector<double> log_p(dim);
  for (std::size_t i = 0; i < dim; ++i) log_p[i] = std::log(p[i]);
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<double> up = log_p, down = log_p;
    up[i] += kLogStep;
    down[i] -= kLogStep;
    const auto pu = to_params(p.kind(), up);
    const auto pd = to_params(p.kind(), down);
    if (!pu || !pd) return {NAN, NAN};
    g[i] = (log_likelihood(*pu, data) - log_likelihood(*pd, data)) / (2.0 * kLogStep) / p[i];
  }
  return g;
}

std::vector<double> start_point(ModelKind kind, const Dataset& data, std::size_t index,
                                std::uint64_t seed) {
  const double rate = 1.0 / data.mean();
  std::vector<double> base;
  switch (kind) {
    case ModelKind::PGDUSE: base = {rate, 1.0}; break;
    case ModelKind::GDUSE: base = {1.0, rate}; break;
    default: base = {rate}; break;
  }
  std::vector<double> log_p(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) log_p[i] = std::log(base[i]);
  if (index == 0) return log_p;

  std::seed_seq seq{seed, static_cast<std::uint64_t>(index)};
  std::mt19937_64 gen(seq);
  std::uniform_real_distribution<double> jitter(-std::log(4.0), std::log(4.0));
  for (double& v : log_p) v += jitter(gen);
  return log_p;
}

struct StartOutcome {
  ParamVector params;
  double log_likelihood;
  bool converged;
  std::size_t iterations;
  double grad_norm;
};

StartOutcome run_start(ModelKind kind, const Dataset& data, const FitOptions& opts,
                       std::size_t index) {
  const Objective objective = [&](std::span<const double> log_p) {
    const auto p = to_params(kind, log_p);
    return p ? -log_likelihood(*p, data) : std::numeric_limits<double>::infinity();
  };

  NelderMeadOptions nm;
  nm.max_iters = opts.max_iters;
  nm.step_tol = opts.step_tol;
  const NelderMeadResult r = nelder_mead(objective, start_point(kind, data, index, opts.seed), nm);

  const auto found = std::isfinite(r.value) ? to_params(kind, r.x) : std::nullopt;
  if (!found) {
    // The simplex never reached a finite likelihood; report the start itself.
    const ParamVector p = *to_params(kind, start_point(kind, data, index, opts.seed));
    return {p, log_likelihood(p, data), false, r.iterations,
            std::numeric_limits<double>::infinity()};
  }
  const ParamVector& p = *found;
  const double log_l = -r.value;
  const double g = scaled_norm(score(p, data), p.size(), log_l);
  const bool ok = std::isfinite(g) && g <= opts.grad_tol;
  return {p, log_l, ok, r.iterations, std::isfinite(g) ? g : std::numeric_limits<double>::infinity()};
}

// Prefers converged starts; within a class the highest logL wins and ties
// go to the lower index.
bool better(const StartOutcome& a, const StartOutcome& b) {
  if (a.converged != b.converged) return a.converged;
  return a.log_likelihood > b.log_likelihood;
}

}  // namespace

void validate(const FitOptions& opts) {
  if (opts.starts < 1) throw Error(Errc::DomainError, "starts must be at least 1");
  if (!(opts.grad_tol > 0.0) || !(opts.step_tol > 0.0)) {
    throw Error(Errc::DomainError, "tolerances must be positive");
  }
}

double log_likelihood(const ParamVector& p, const Dataset& data) {
  double s = 0.0;
  for (double x : data.observations()) s += log_pdf(p, x);
  return s;
}

std::array<double, 2> score_pgduse(const PgduseParams& raw, const Dataset& data) {
  const PgduseParams p = checked(raw);
  const double n = static_cast<double>(data.size());
  double d_lambda = n / p.lambda;
  double d_theta = n / p.theta - n * kLogEm1;
  for (double x : data.observations()) {
    const double decay = std::exp(-p.lambda * x);
    const double t = -std::expm1(-p.lambda * x);
    // e^t / (e^t - 1) written as 1 / (1 - e^-t) to keep precision for small t
    d_lambda += -x + x * decay + (p.theta - 1.0) * x * decay / -std::expm1(-t);
    d_theta += log_expm1(t);
  }
  return {d_lambda, d_theta};
}

std::array<double, 2> score(const ParamVector& p, const Dataset& data) {
  switch (p.kind()) {
    case ModelKind::PGDUSE: return score_pgduse(p.as_pgduse(), data);
    case ModelKind::DUSE: return {score_pgduse(p.as_pgduse(), data)[0], 0.0};
    case ModelKind::ED: {
      const double n = static_cast<double>(data.size());
      return {n / p[0] - data.sum(), 0.0};
    }
    case ModelKind::GDUSE:
    case ModelKind::KME: return finite_difference_score(p, data);
  }
  return {NAN, NAN};
}

ScalarParam fit_ed_closed_form(const Dataset& data) {
  return {static_cast<double>(data.size()) / data.sum()};
}

FitResult fit_mle(ModelKind kind, const Dataset& data, const FitOptions& opts) {
  validate(opts);

  if (kind == ModelKind::ED) {
    const ParamVector p = make_params(kind, fit_ed_closed_form(data));
    const double log_l = log_likelihood(p, data);
    const double g = scaled_norm(score(p, data), 1, log_l);
    return {kind, p, log_l, std::isfinite(g), 0, g, 0};
  }

  std::vector<StartOutcome> outcomes;
  outcomes.reserve(opts.starts);
  if (opts.parallel && opts.starts > 1) {
    std::vector<std::future<StartOutcome>> futures;
    futures.reserve(opts.starts);
    for (std::size_t i = 0; i < opts.starts; ++i) {
      futures.push_back(std::async(std::launch::async,
                                   [&, i] { return run_start(kind, data, opts, i); }));
    }
    for (auto& f : futures) outcomes.push_back(f.get());
  } else {
    for (std::size_t i = 0; i < opts.starts; ++i) outcomes.push_back(run_start(kind, data, opts, i));
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < outcomes.size(); ++i) {
    if (better(outcomes[i], outcomes[best])) best = i;
  }
  const StartOutcome& o = outcomes[best];
  return {kind, o.params, o.log_likelihood, o.converged, o.iterations, o.grad_norm, best};
}

}  // namespace pgdus
