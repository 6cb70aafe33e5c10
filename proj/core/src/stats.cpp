#include "periodica/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "periodica/rng.hpp"
#include "periodica/special.hpp"

namespace periodica {

MonthlySeries first_differences(const MonthlySeries& series) {
    if (series.size() < 2)
        throw TooShortError("first_differences needs at least 2 observations, got " +
                            std::to_string(series.size()));
    MonthlySeries out;
    out.start = series.start.plus_months(1);
    out.label = series.label.empty() ? "diff" : "diff(" + series.label + ")";
    out.values.resize(series.size() - 1);
    for (std::size_t i = 0; i + 1 < series.size(); ++i)
        out.values[i] = series.values[i + 1] - series.values[i];
    return out;
}

AcfResult acf(std::span<const double> values, int max_lag) {
    const std::size_t n = values.size();
    if (max_lag < 0) throw ParamError("acf: max_lag must be >= 0");
    if (static_cast<std::size_t>(max_lag) >= n)
        throw ParamError("acf: max_lag must be smaller than the sample size");

    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
    double denom = 0.0;
    for (double v : values) denom += (v - mean) * (v - mean);
    if (denom == 0.0) throw DegenerateError("acf: series has zero variance");

    AcfResult out;
    out.n = n;
    out.rho.resize(static_cast<std::size_t>(max_lag) + 1);
    out.rho[0] = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double num = 0.0;
        for (std::size_t t = 0; t + static_cast<std::size_t>(k) < n; ++t)
            num += (values[t] - mean) * (values[t + static_cast<std::size_t>(k)] - mean);
        out.rho[static_cast<std::size_t>(k)] = num / denom;
    }
    return out;
}

AcfResult acf(const SampledSeries& series, int max_lag) {
    for (std::size_t i = 1; i < series.times.size(); ++i) {
        if (std::abs((series.times[i] - series.times[i - 1]) - 1.0) > 1e-9)
            throw ParamError("acf: sampling is irregular (gap at t=" +
                             std::to_string(series.times[i - 1]) + ")");
    }
    return acf(std::span<const double>(series.values), max_lag);
}

namespace {

TestReport portmanteau(const AcfResult& r, int h, bool ljung, const char* name) {
    if (h <= 0) throw ParamError(std::string(name) + ": number of lags must be positive");
    if (h > r.max_lag())
        throw ParamError(std::string(name) + ": h exceeds the computed max lag");
    const double n = static_cast<double>(r.n);
    double q = 0.0;
    for (int k = 1; k <= h; ++k) {
        const double rho = r.rho[static_cast<std::size_t>(k)];
        q += ljung ? rho * rho / (n - k) : rho * rho;
    }
    q *= ljung ? n * (n + 2.0) : n;
    TestReport rep;
    rep.test_name = name;
    rep.statistic = q;
    rep.dof = h;
    rep.p_value = chi_square_sf(q, h);
    return rep;
}

}  // namespace

TestReport box_pierce(const AcfResult& r, int h) { return portmanteau(r, h, false, "box-pierce"); }

TestReport ljung_box(const AcfResult& r, int h) { return portmanteau(r, h, true, "ljung-box"); }

namespace {

std::string sim_label(const char* kind, std::size_t n, double sigma, std::uint64_t seed) {
    return std::string(kind) + " n=" + std::to_string(n) + " sigma=" + std::to_string(sigma) +
           " seed=" + std::to_string(seed) + " rng=" + CounterRng::kName;
}

// Draws are snapped to the power-of-two grid sigma * 2^-26 so that every
// partial sum of a walk is exactly representable and differencing the walk
// returns the noise values bit for bit. The snap is ~1e-8 relative, far
// below anything the statistical tests can resolve.
double quantized_step(const CounterRng& rng, std::uint64_t t, double sigma) {
    const double raw = sigma * rng.gaussian(t);
    const double unit = std::ldexp(1.0, std::ilogb(sigma) - 26);
    if (!(unit > 0.0) || !std::isfinite(unit)) return raw;
    return std::nearbyint(raw / unit) * unit;
}

}  // namespace

MonthlySeries simulate_white_noise(std::size_t n, double sigma, std::uint64_t seed) {
    if (n < 1) throw ParamError("simulate_white_noise: n must be >= 1");
    if (!(sigma > 0.0)) throw ParamError("simulate_white_noise: sigma must be > 0");
    const CounterRng rng(seed);
    MonthlySeries out;
    out.start = YearMonth{1960, 1};
    out.label = sim_label("white-noise", n, sigma, seed);
    out.values.resize(n);
    for (std::size_t t = 0; t < n; ++t) out.values[t] = quantized_step(rng, t, sigma);
    return out;
}

MonthlySeries simulate_random_walk(std::size_t n, double sigma, std::uint64_t seed) {
    if (n < 1) throw ParamError("simulate_random_walk: n must be >= 1");
    if (!(sigma > 0.0)) throw ParamError("simulate_random_walk: sigma must be > 0");
    const CounterRng rng(seed);
    MonthlySeries out;
    out.start = YearMonth{1960, 1};
    out.label = sim_label("random-walk", n, sigma, seed);
    out.values.resize(n);
    double y = 0.0;
    out.values[0] = y;
    for (std::size_t t = 1; t < n; ++t) {
        y += quantized_step(rng, t, sigma);
        out.values[t] = y;
    }
    return out;
}

namespace {

struct Moments {
    double mean, m2, m3, m4;
};

Moments central_moments(std::span<const double> v) {
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double m2 = 0, m3 = 0, m4 = 0;
    for (double x : v) {
        const double d = x - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    return {mean, m2 / n, m3 / n, m4 / n};
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

TestReport ks_test_normal(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 8) throw ParamError("ks_test_normal: need at least 8 observations");
    const auto m = central_moments(values);
    if (m.m2 == 0.0) throw DegenerateError("ks_test_normal: zero variance");
    const double sd = std::sqrt(m.m2);

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = normal_cdf((sorted[i] - m.mean) / sd);
        d = std::max(d, static_cast<double>(i + 1) / n - f);
        d = std::max(d, f - static_cast<double>(i) / n);
    }
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;

    TestReport rep;
    rep.test_name = "kolmogorov-smirnov";
    rep.statistic = d;
    rep.dof = 0;
    rep.p_value = kolmogorov_sf(lambda);
    return rep;
}

TestReport jarque_bera(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 8) throw ParamError("jarque_bera: need at least 8 observations");
    const auto m = central_moments(values);
    if (m.m2 == 0.0) throw DegenerateError("jarque_bera: zero variance");
    const double skew = m.m3 / std::pow(m.m2, 1.5);
    const double kurt = m.m4 / (m.m2 * m.m2);
    const double jb = (static_cast<double>(n) / 6.0) *
                      (skew * skew + 0.25 * (kurt - 3.0) * (kurt - 3.0));

    TestReport rep;
    rep.test_name = "jarque-bera";
    rep.statistic = jb;
    rep.dof = 2;
    rep.p_value = chi_square_sf(jb, 2);
    return rep;
}

}  // namespace periodica
