#include <benchmark/benchmark.h>

#include "pgdus/analytic.hpp"
#include "pgdus/distribution.hpp"
#include "pgdus/estimation.hpp"
#include "pgdus/model_select.hpp"
#include "pgdus/reference_data.hpp"

namespace {

using namespace pgdus;

void BM_LogLikelihood(benchmark::State& state) {
  const Dataset data = lawless_bearings();
  const auto p = make_params(PgduseParams{0.0336, 3.8});
  for (auto _ : state) benchmark::DoNotOptimize(log_likelihood(p, data));
}
BENCHMARK(BM_LogLikelihood);

void BM_Fit(benchmark::State& state) {
  const Dataset data = lawless_bearings();
  const auto kind = static_cast<ModelKind>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fit_mle(kind, data));
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_Fit)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_CompareLawless(benchmark::State& state) {
  const Dataset data = lawless_bearings();
  CompareOptions opts;
  opts.fit.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(compare(data, kAllModels, opts));
}
BENCHMARK(BM_CompareLawless)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MomentSeries(benchmark::State& state) {
  const double theta = static_cast<double>(state.range(0)) / 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(raw_moment_series({1.0, theta}, 2));
}
BENCHMARK(BM_MomentSeries)->Arg(1)->Arg(4)->Arg(10);

void BM_MomentQuadrature(benchmark::State& state) {
  const auto p = make_params(PgduseParams{1.0, static_cast<double>(state.range(0)) / 2.0});
  for (auto _ : state) benchmark::DoNotOptimize(raw_moment_quadrature(p, 2));
}
BENCHMARK(BM_MomentQuadrature)->Arg(1)->Arg(4)->Arg(10);

void BM_KsExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ks_pvalue(0.15, n, PValueMethod::Exact));
}
BENCHMARK(BM_KsExact)->Arg(23)->Arg(100);

void BM_KsAsymptotic(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ks_pvalue(0.15, 23, PValueMethod::Asymptotic));
}
BENCHMARK(BM_KsAsymptotic);

}  // namespace

BENCHMARK_MAIN();
