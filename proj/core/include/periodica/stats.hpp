#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "periodica/ingest.hpp"

namespace periodica {

/// Sample autocorrelations rho[0..max_lag]; rho[0] is exactly 1.
struct AcfResult {
    std::vector<double> rho;
    std::size_t n = 0;  // sample size the estimate was computed from

    int max_lag() const noexcept { return static_cast<int>(rho.size()) - 1; }
};

struct TestReport {
    std::string test_name;
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

/// out_t = y_{t+1} - y_t; one month shorter, starting one month later.
MonthlySeries first_differences(const MonthlySeries& series);

/// Stationary-form ACF: numerator sums lagged products of deviations, the
/// denominator is the single full-sample sum of squared deviations, so
/// |rho_k| <= 1 by Cauchy-Schwarz.
AcfResult acf(std::span<const double> values, int max_lag);

/// Overload that insists on regular (unit-spaced) sampling.
AcfResult acf(const SampledSeries& series, int max_lag);

/// Box-Pierce Q = n * sum_{k=1..h} rho_k^2, chi-square(h) p-value.
TestReport box_pierce(const AcfResult& r, int h);

/// Ljung-Box Q = n(n+2) * sum_{k=1..h} rho_k^2 / (n-k), chi-square(h) p-value.
TestReport ljung_box(const AcfResult& r, int h);

/// iid Gaussian(0, sigma^2) draws; value t is a pure function of (seed, t).
MonthlySeries simulate_white_noise(std::size_t n, double sigma, std::uint64_t seed);

/// y_0 = 0, y_t = y_{t-1} + eps_t with the same noise stream as
/// simulate_white_noise, so differencing a walk recovers its injected noise.
MonthlySeries simulate_random_walk(std::size_t n, double sigma, std::uint64_t seed);

/// Kolmogorov-Smirnov distance to the Normal fitted by moments, with the
/// asymptotic p-value. Needs n >= 8.
TestReport ks_test_normal(std::span<const double> values);

/// Jarque-Bera: (n/6) * (skew^2 + (kurtosis - 3)^2 / 4), chi-square(2) p-value.
TestReport jarque_bera(std::span<const double> values);

}  // namespace periodica
