#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "oracles.hpp"
#include "periodica/detrend.hpp"
#include "periodica/errors.hpp"
#include "periodica/ingest.hpp"
#include "periodica/rng.hpp"

using namespace periodica;

namespace {

SampledSeries regular(std::vector<double> values) {
    SampledSeries s;
    s.values = std::move(values);
    s.times.resize(s.values.size());
    for (std::size_t t = 0; t < s.times.size(); ++t) s.times[t] = static_cast<double>(t);
    return s;
}

SampledSeries noisy_series(std::size_t n, std::uint64_t seed) {
    CounterRng rng(seed);
    SampledSeries s;
    s.times.resize(n);
    s.values.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double x = static_cast<double>(t);
        s.times[t] = x;
        s.values[t] = 50.0 + 0.3 * x - 1e-3 * x * x + rng.gaussian(t);
    }
    return s;
}

double rss(const SampledSeries& s, const PolyTrend& trend) {
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double r = s.values[i] - trend.evaluate(s.times[i]);
        sum += r * r;
    }
    return sum;
}

}  // namespace

TEST_CASE("constant series fits exactly at any order") {
    const SampledSeries s = regular(std::vector<double>(20, 4.5));
    for (int order : {0, 1, 3, 6}) {
        const PolyTrend trend = fit_polynomial(s, order);
        CHECK(trend.order == order);
        REQUIRE(trend.coeffs.size() == static_cast<std::size_t>(order) + 1);
        for (double t : s.times) CHECK(trend.evaluate(t) == doctest::Approx(4.5).epsilon(1e-12));
    }
}

TEST_CASE("exact linear data is reproduced") {
    std::vector<double> v(10);
    for (std::size_t t = 0; t < 10; ++t) v[t] = 2.0 * static_cast<double>(t) + 3.0;
    const SampledSeries s = regular(std::move(v));
    const PolyTrend trend = fit_polynomial(s, 1);
    for (std::size_t t = 0; t < 10; ++t)
        CHECK(std::fabs(trend.evaluate(s.times[t]) - s.values[t]) < 1e-9);
}

TEST_CASE("quadratic data matches the extended-precision oracle") {
    std::vector<double> v(20);
    for (std::size_t t = 0; t < 20; ++t) v[t] = static_cast<double>(t) * static_cast<double>(t);
    const SampledSeries s = regular(std::move(v));
    const PolyTrend trend = fit_polynomial(s, 2);
    const auto beta = oracle::poly_fit(s.times, s.values, 2, trend.t_min, trend.t_max);
    REQUIRE(beta.size() == trend.coeffs.size());
    for (std::size_t i = 0; i < beta.size(); ++i)
        CHECK(trend.coeffs[i] == doctest::Approx(beta[i]).epsilon(1e-10));
    for (std::size_t t = 0; t < 20; ++t)
        CHECK(std::fabs(trend.evaluate(s.times[t]) - s.values[t]) < 1e-8);
}

TEST_CASE("noisy fits agree with the normal-equations oracle") {
    for (int order : {1, 3, 5}) {
        const SampledSeries s = noisy_series(300, 42 + static_cast<std::uint64_t>(order));
        const PolyTrend trend = fit_polynomial(s, order);
        const auto beta = oracle::poly_fit(s.times, s.values, order, trend.t_min, trend.t_max);
        REQUIRE(beta.size() == trend.coeffs.size());
        for (std::size_t i = 0; i < beta.size(); ++i)
            CHECK(trend.coeffs[i] == doctest::Approx(beta[i]).epsilon(1e-8));
    }
}

TEST_CASE("residuals are orthogonal to the scaled basis") {
    const SampledSeries s = noisy_series(400, 7);
    const int order = 5;
    const PolyTrend trend = fit_polynomial(s, order);
    const SampledSeries resid = detrend(s, trend);
    const double mid = 0.5 * (trend.t_min + trend.t_max);
    const double half = 0.5 * (trend.t_max - trend.t_min);
    for (int k = 0; k <= order; ++k) {
        long double dot = 0.0L;
        for (std::size_t i = 0; i < resid.size(); ++i) {
            const double sc = (resid.times[i] - mid) / half;
            dot += static_cast<long double>(resid.values[i]) * std::pow(sc, k);
        }
        CHECK(std::fabs(static_cast<double>(dot)) / static_cast<double>(resid.size()) < 1e-8);
    }
}

TEST_CASE("detrended series has negligible mean at any order") {
    const SampledSeries s = noisy_series(257, 11);
    for (int order : {0, 2, 5, 8}) {
        const SampledSeries resid = detrend(s, fit_polynomial(s, order));
        CHECK(std::fabs(oracle::mean(resid.values)) < 1e-8);
        CHECK(resid.times == s.times);
    }
}

TEST_CASE("raising the order never raises the residual sum of squares") {
    const SampledSeries s = noisy_series(150, 23);
    double prev = rss(s, fit_polynomial(s, 0));
    for (int order = 1; order <= 8; ++order) {
        const double cur = rss(s, fit_polynomial(s, order));
        CHECK(cur <= prev + 1e-9 * (1.0 + prev));
        prev = cur;
    }
}

TEST_CASE("series equal to its own trend leaves zero residuals") {
    PolyTrend line;
    line.order = 1;
    line.t_min = 0.0;
    line.t_max = 9.0;
    line.coeffs = {5.0, 2.0};
    SampledSeries s;
    for (int t = 0; t < 10; ++t) {
        s.times.push_back(static_cast<double>(t));
        s.values.push_back(line.evaluate(static_cast<double>(t)));
    }
    const SampledSeries resid = detrend(s, line);
    for (double r : resid.values) CHECK(std::fabs(r) < 1e-12);
}

TEST_CASE("zero trend detrending is the identity") {
    PolyTrend zero;
    zero.order = 0;
    zero.coeffs = {0.0};
    zero.t_min = 0.0;
    zero.t_max = 5.0;
    const SampledSeries s = regular({3.0, 1.0, 4.0, 1.0, 5.0, 9.0});
    const SampledSeries out = detrend(s, zero);
    CHECK(out.values == s.values);
    CHECK(out.times == s.times);
}

TEST_CASE("order-zero trend evaluates to its constant everywhere") {
    PolyTrend c;
    c.order = 0;
    c.coeffs = {7.25};
    c.t_min = 0.0;
    c.t_max = 10.0;
    for (double t : {-5.0, 0.0, 3.3, 10.0, 100.0}) CHECK(c.evaluate(t) == 7.25);
}

TEST_CASE("linear trend extrapolates linearly") {
    SampledSeries s;
    for (int t = 0; t <= 10; ++t) {
        s.times.push_back(static_cast<double>(t));
        s.values.push_back(static_cast<double>(t));
    }
    const PolyTrend trend = fit_polynomial(s, 1);
    CHECK(trend.evaluate(20.0) == doctest::Approx(20.0).epsilon(1e-9));
    const auto at = evaluate_trend(trend, std::vector<double>{20.0, -10.0});
    CHECK(at[0] == doctest::Approx(20.0).epsilon(1e-9));
    CHECK(at[1] == doctest::Approx(-10.0).epsilon(1e-9));
}

TEST_CASE("fitted values round-trip through evaluate_trend") {
    const SampledSeries s = noisy_series(200, 31);
    const PolyTrend trend = fit_polynomial(s, 5);
    const auto direct = evaluate_trend(trend, s.times);
    for (std::size_t i = 0; i < s.size(); ++i)
        CHECK(direct[i] == doctest::Approx(trend.evaluate(s.times[i])).epsilon(1e-10));
}

TEST_CASE("fit preconditions") {
    const SampledSeries s = regular({1.0, 2.0, 3.0});
    CHECK_THROWS_AS(fit_polynomial(s, 3), RankError);
    CHECK_THROWS_AS(fit_polynomial(s, 13), ParamError);
    CHECK_THROWS_AS(fit_polynomial(s, -1), ParamError);
    SampledSeries empty;
    CHECK_THROWS_AS(fit_polynomial(empty, 1), EmptySeriesError);
    SampledSeries unsorted;
    unsorted.times = {0.0, 2.0, 1.0};
    unsorted.values = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(fit_polynomial(unsorted, 1), ParamError);
}

TEST_CASE("duplicate sample times make the fit singular") {
    SampledSeries s;
    s.times = {0.0, 0.0, 0.0, 0.0};
    s.values = {1.0, 2.0, 3.0, 4.0};
    CHECK_THROWS_AS(fit_polynomial(s, 2), ParamError);  // non-increasing times
}

TEST_CASE("monthly overload matches the sampled fit") {
    MonthlySeries m{YearMonth{1960, 1}, {}, "m"};
    CounterRng rng(3);
    for (std::size_t t = 0; t < 120; ++t)
        m.values.push_back(10.0 + 0.1 * static_cast<double>(t) + 0.2 * rng.gaussian(t));
    const PolyTrend from_monthly = fit_polynomial(m, 3);
    const PolyTrend from_sampled = fit_polynomial(as_sampled(m), 3);
    REQUIRE(from_monthly.coeffs.size() == from_sampled.coeffs.size());
    for (std::size_t i = 0; i < from_monthly.coeffs.size(); ++i)
        CHECK(from_monthly.coeffs[i] == from_sampled.coeffs[i]);
}

TEST_CASE("default detrend orders by country") {
    CHECK(default_detrend_order(Country::US) == 5);
    CHECK(default_detrend_order(Country::Germany) == 5);
    CHECK(default_detrend_order(Country::Japan) == 6);
}
