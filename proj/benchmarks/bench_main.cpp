#include <benchmark/benchmark.h>

#include "ssdlab/baselines.hpp"
#include "ssdlab/fit.hpp"
#include "ssdlab/gof.hpp"
#include "ssdlab/ssd.hpp"

using namespace ssdlab;

namespace {

const SsdParams kParams(2.5, 1.3);

void BM_Pdf(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssd::pdf(x, kParams));
        x = x < 10 ? x + 0.01 : 0.1;
    }
}
BENCHMARK(BM_Pdf);

void BM_Cdf(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssd::cdf(x, kParams));
        x = x < 10 ? x + 0.01 : 0.1;
    }
}
BENCHMARK(BM_Cdf);

void BM_Quantile(benchmark::State& state) {
    double u = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssd::quantile(u, kParams));
        u = u < 0.98 ? u + 0.0097 : 0.01;
    }
}
BENCHMARK(BM_Quantile);

void BM_Sample(benchmark::State& state) {
    std::mt19937_64 rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(ssd::sample_values(state.range(0), kParams, rng));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sample)->Arg(1000)->Arg(100000);

void BM_TttTransform(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(ssd::ttt_transform(0.7, kParams));
}
BENCHMARK(BM_TttTransform);

void BM_LogLikelihood(benchmark::State& state) {
    const auto data = ssd::sample(state.range(0), kParams, 3);
    for (auto _ : state) benchmark::DoNotOptimize(log_likelihood(kParams, data));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogLikelihood)->Arg(100)->Arg(10000);

void BM_FitProfile(benchmark::State& state) {
    const auto data = ssd::sample(state.range(0), SsdParams(3.0, 1.5), 42);
    for (auto _ : state) benchmark::DoNotOptimize(fit_profile(data));
}
BENCHMARK(BM_FitProfile)->Arg(100)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_FitContinuous(benchmark::State& state) {
    const auto data = ssd::sample(state.range(0), SsdParams(3.0, 1.5), 42);
    for (auto _ : state) benchmark::DoNotOptimize(fit_continuous(data));
}
BENCHMARK(BM_FitContinuous)->Arg(100)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_CompareAllModels(benchmark::State& state) {
    const auto data = ssd::sample(100, SsdParams(0.5, 0.2), 9);
    const std::vector<ModelKind> models(kAllModels.begin(), kAllModels.end());
    for (auto _ : state) benchmark::DoNotOptimize(compare_models(data, models));
}
BENCHMARK(BM_CompareAllModels)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
