#include <benchmark/benchmark.h>

#include "defprior/empirical_bayes.hpp"
#include "defprior/jeffreys.hpp"
#include "defprior/stats_kernel.hpp"

namespace {

using namespace defprior;

void BM_NormalQuantile(benchmark::State& state) {
  double p = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(std_normal_quantile(p));
    p = p < 0.999 ? p + 1e-3 : 1e-6;
  }
}
BENCHMARK(BM_NormalQuantile);

void BM_FisherInformation(benchmark::State& state) {
  const double theta = static_cast<double>(state.range(0)) / 4.0;
  for (auto _ : state) benchmark::DoNotOptimize(fisher_information(theta, 1.0));
}
BENCHMARK(BM_FisherInformation)->Arg(1)->Arg(4)->Arg(16);

void BM_MarginalLoglik(benchmark::State& state) {
  const Dataset data = simulate_dataset(1.6384, 0.5, 50, 12, 1);
  FitConfig cfg;
  cfg.gh_nodes = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(marginal_loglik(1.6, 0.5, data, cfg));
}
BENCHMARK(BM_MarginalLoglik)->Arg(20)->Arg(40)->Arg(80);

void BM_FitMixed(benchmark::State& state) {
  const Dataset data = simulate_dataset(1.6384, 0.5, static_cast<std::size_t>(state.range(0)),
                                        12, 1);
  for (auto _ : state) benchmark::DoNotOptimize(fit_mixed(data));
}
BENCHMARK(BM_FitMixed)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
