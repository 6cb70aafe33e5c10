#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "periodica/rng.hpp"
#include "periodica/spectral.hpp"

namespace {

std::vector<double> noisy_tones(std::size_t n) {
    periodica::CounterRng rng(99);
    std::vector<double> x(n);
    for (std::size_t t = 0; t < n; ++t)
        x[t] = 3.0 * std::cos(2.0 * std::numbers::pi * 0.01 * static_cast<double>(t)) +
               1.5 * std::cos(2.0 * std::numbers::pi * 0.07 * static_cast<double>(t)) +
               0.5 * rng.gaussian(t);
    return x;
}

void bm_dft(benchmark::State& state) {
    const auto x = noisy_tones(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(periodica::dft(x));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_dft)->RangeMultiplier(2)->Range(256, 8192)->Complexity();

void bm_dft_prime_length(benchmark::State& state) {
    const auto x = noisy_tones(787);  // prime length exercises the direct path
    for (auto _ : state) benchmark::DoNotOptimize(periodica::dft(x));
}
BENCHMARK(bm_dft_prime_length);

void bm_scaled_periodogram(benchmark::State& state) {
    const auto x = noisy_tones(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(periodica::scaled_periodogram(x));
}
BENCHMARK(bm_scaled_periodogram)->Arg(786)->Arg(4096);

void bm_welch(benchmark::State& state) {
    const auto x = noisy_tones(static_cast<std::size_t>(state.range(0)));
    periodica::WelchOptions opt;
    for (auto _ : state) benchmark::DoNotOptimize(periodica::welch(x, opt));
}
BENCHMARK(bm_welch)->Arg(786)->Arg(4096);

void bm_lomb_scargle(benchmark::State& state) {
    const auto values = noisy_tones(static_cast<std::size_t>(state.range(0)));
    periodica::SampledSeries s;
    for (std::size_t t = 0; t < values.size(); ++t) {
        if (t % 7 == 3) continue;  // knock out every seventh sample
        s.times.push_back(static_cast<double>(t));
        s.values.push_back(values[t]);
    }
    const auto grid = periodica::default_lomb_grid(s, 4.0, 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(periodica::lomb_scargle(s, grid));
}
BENCHMARK(bm_lomb_scargle)->Arg(786)->Arg(2048);

}  // namespace

BENCHMARK_MAIN();
