#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "periodica/detrend.hpp"
#include "periodica/harmonics.hpp"
#include "periodica/rng.hpp"

namespace {

periodica::SampledSeries trended_tones(std::size_t n) {
    periodica::CounterRng rng(7);
    periodica::SampledSeries s;
    s.times.resize(n);
    s.values.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double x = static_cast<double>(t);
        s.times[t] = x;
        s.values[t] = 100.0 + 0.05 * x + 2e-4 * x * x +
                      4.0 * std::cos(2.0 * std::numbers::pi * x / 196.5) +
                      2.0 * std::cos(2.0 * std::numbers::pi * x / 87.3) + 0.3 * rng.gaussian(t);
    }
    return s;
}

void bm_fit_polynomial(benchmark::State& state) {
    const auto s = trended_tones(786);
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(periodica::fit_polynomial(s, order));
}
BENCHMARK(bm_fit_polynomial)->Arg(2)->Arg(5)->Arg(8)->Arg(12);

void bm_fit_harmonics(benchmark::State& state) {
    const auto s = trended_tones(786);
    const auto trend = periodica::fit_polynomial(s, 5);
    const auto resid = periodica::detrend(s, trend);
    std::vector<double> freqs;
    for (int j = 1; j <= state.range(0); ++j) freqs.push_back(0.004 * static_cast<double>(j));
    for (auto _ : state) benchmark::DoNotOptimize(periodica::fit_harmonics(resid, freqs));
}
BENCHMARK(bm_fit_harmonics)->Arg(1)->Arg(5)->Arg(15);

void bm_fit_pipeline(benchmark::State& state) {
    const auto s = trended_tones(static_cast<std::size_t>(state.range(0)));
    periodica::PipelineOptions opt;
    for (auto _ : state) benchmark::DoNotOptimize(periodica::fit_pipeline(s, opt));
}
BENCHMARK(bm_fit_pipeline)->Arg(786)->Arg(2048);

}  // namespace

BENCHMARK_MAIN();
