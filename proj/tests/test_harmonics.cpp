#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "periodica/errors.hpp"
#include "periodica/harmonics.hpp"
#include "periodica/rng.hpp"
#include "periodica/spectral.hpp"

using namespace periodica;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SampledSeries regular_grid(std::size_t n) {
    SampledSeries s;
    s.times.resize(n);
    s.values.assign(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) s.times[t] = static_cast<double>(t);
    return s;
}

// The five periods used throughout as the recovery fixture.
const std::vector<double> kFixturePeriods{87.3, 98.25, 112.3, 196.5, 262.0};

SampledSeries five_tone_fixture(std::size_t n, double noise_sigma, std::uint64_t seed,
                                std::vector<double> amplitudes = {2.0, 2.2, 2.4, 2.6, 3.0}) {
    CounterRng rng(seed);
    SampledSeries s = regular_grid(n);
    for (std::size_t t = 0; t < n; ++t) {
        double v = 0.0;
        for (std::size_t j = 0; j < kFixturePeriods.size(); ++j)
            v += amplitudes[j] * std::cos(kTwoPi * s.times[t] / kFixturePeriods[j] +
                                          0.37 * static_cast<double>(j));
        if (noise_sigma > 0.0) v += noise_sigma * rng.gaussian(t);
        s.values[t] = v;
    }
    return s;
}

double rss_against(const SampledSeries& s, const HarmonicModel& m) {
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double r = s.values[i] - m.value_at(s.times[i]);
        sum += r * r;
    }
    return sum;
}

}  // namespace

TEST_CASE("a single nonzero bin is the top peak") {
    SpectralEstimate est;
    est.freqs = {0.1, 0.2, 0.3};
    est.power = {0.0, 5.0, 0.0};
    est.method = "classical";
    const auto peaks = top_k_frequencies(est, 1);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].bin == 1);
    CHECK(peaks[0].frequency == 0.2);
    CHECK(peaks[0].power == 5.0);
    CHECK(peaks[0].share_total == doctest::Approx(1.0));
    CHECK(peaks[0].share_selected == doctest::Approx(1.0));
}

TEST_CASE("equal-power tie goes to the lower frequency") {
    SpectralEstimate est;
    est.freqs = {0.1, 0.2, 0.3, 0.4};
    est.power = {0.0, 4.0, 0.0, 4.0};
    est.method = "classical";
    const auto peaks = top_k_frequencies(est, 1);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].frequency == 0.2);
    // with k=2 both appear, still ordered low frequency first on the tie
    const auto two = top_k_frequencies(est, 2);
    REQUIRE(two.size() == 2);
    CHECK(two[0].frequency == 0.2);
    CHECK(two[1].frequency == 0.4);
    CHECK(two[0].share_total == doctest::Approx(0.5));
    CHECK(two[0].share_selected == doctest::Approx(0.5));
}

TEST_CASE("an equal-power plateau is represented by its lowest frequency") {
    SpectralEstimate est;
    est.freqs = {0.1, 0.15, 0.2, 0.25, 0.3};
    est.power = {1.0, 6.0, 6.0, 6.0, 1.0};
    est.method = "classical";
    est.bin_width = 0.11;  // the whole plateau sits inside one resolution width
    const auto one = top_k_frequencies(est, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].frequency == 0.15);
    const auto two = top_k_frequencies(est, 2);
    REQUIRE(two.size() == 2);
    CHECK(two[0].frequency == 0.15);
    CHECK(two[1].frequency == 0.3);  // rest of the plateau is shadowed
}

TEST_CASE("oversampled lobe shoulders are not reported as separate peaks") {
    SpectralEstimate est;
    est.freqs = {0.1, 0.12, 0.14, 0.3, 0.32};
    est.power = {8.0, 10.0, 7.0, 3.0, 1.0};
    est.method = "lomb_scargle";
    est.bin_width = 0.05;  // grid spacing 0.02 oversamples the resolution
    const auto peaks = top_k_frequencies(est, 2);
    REQUIRE(peaks.size() == 2);
    CHECK(peaks[0].frequency == 0.12);  // lobe maximum, not its shoulders
    CHECK(peaks[1].frequency == 0.3);
}

TEST_CASE("bins exactly one resolution width apart stay independently selectable") {
    SpectralEstimate est;
    est.freqs = {0.10, 0.15, 0.20, 0.25};
    est.power = {5.0, 4.0, 3.0, 2.0};
    est.method = "classical";
    est.bin_width = 0.05;  // critically sampled: spacing equals resolution
    const auto peaks = top_k_frequencies(est, 4);
    REQUIRE(peaks.size() == 4);
    CHECK(peaks[0].frequency == 0.10);
    CHECK(peaks[3].frequency == 0.25);
}

TEST_CASE("separation can exhaust the grid before k peaks are found") {
    SpectralEstimate est;
    est.freqs = {0.1, 0.2, 0.3};
    est.power = {1.0, 9.0, 1.0};
    est.method = "classical";
    const auto all = top_k_frequencies(est, 3);  // zero bin_width: plain top-k
    CHECK(all.size() == 3);
    CHECK(all[0].frequency == 0.2);
    CHECK(all[1].frequency == 0.1);  // tie between the 1.0 bins: lower first
    est.bin_width = 0.5;
    const auto starved = top_k_frequencies(est, 3);
    REQUIRE(starved.size() == 1);
    CHECK(starved[0].frequency == 0.2);
    CHECK(starved[0].share_selected == 1.0);
    CHECK_THROWS_AS(top_k_frequencies(est, 4), ParamError);
    CHECK_THROWS_AS(top_k_frequencies(est, 0), ParamError);
    SpectralEstimate empty;
    empty.method = "classical";
    CHECK_THROWS_AS(top_k_frequencies(empty, 1), EmptySeriesError);
}

TEST_CASE("five fixture tones are recovered within one bin") {
    const SampledSeries s = five_tone_fixture(786, 0.2, 9001);
    const SpectralEstimate est = scaled_periodogram(s.values);
    const auto peaks = top_k_frequencies(est, 5);
    REQUIRE(peaks.size() == 5);
    for (double period : kFixturePeriods) {
        const double f = 1.0 / period;
        bool matched = false;
        for (const auto& p : peaks)
            if (std::fabs(p.frequency - f) <= est.bin_width + 1e-15) matched = true;
        CHECK_MESSAGE(matched, "period ", period, " not recovered");
    }
}

TEST_CASE("fixture peak shares cover at least ninety percent of total power") {
    // noise sigma = 10% of the smallest amplitude
    const SampledSeries s = five_tone_fixture(786, 0.2, 4242);
    const SpectralEstimate est = scaled_periodogram(s.values);
    const auto peaks = top_k_frequencies(est, 5);
    double share = 0.0;
    for (const auto& p : peaks) share += p.share_total;
    CHECK(share >= 0.9);
}

TEST_CASE("top-k selection is invariant to positive rescaling") {
    const SampledSeries s = five_tone_fixture(512, 0.3, 77);
    SampledSeries scaled = s;
    for (double& v : scaled.values) v *= 1312.25;
    const auto a = top_k_frequencies(scaled_periodogram(s.values), 5);
    const auto b = top_k_frequencies(scaled_periodogram(scaled.values), 5);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].bin == b[i].bin);
        CHECK(a[i].share_total == doctest::Approx(b[i].share_total).epsilon(1e-9));
    }
}

TEST_CASE("an exact cosine tone fits with a=3 b=0") {
    SampledSeries s = regular_grid(200);
    const double f = 10.0 / 200.0;
    for (std::size_t t = 0; t < 200; ++t) s.values[t] = 3.0 * std::cos(kTwoPi * f * s.times[t]);
    const std::vector<double> freqs{f};
    const HarmonicModel m = fit_harmonics(s, freqs);
    REQUIRE(m.terms.size() == 1);
    CHECK(m.terms[0].cos_coef == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(std::fabs(m.terms[0].sin_coef) < 1e-8);
    CHECK(m.terms[0].amplitude == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(std::fabs(m.terms[0].phase) < 1e-8);
    CHECK(m.terms[0].period() == doctest::Approx(20.0));
}

TEST_CASE("a shifted sine recovers amplitude two and phase pi over four minus pi over two") {
    SampledSeries s = regular_grid(240);
    const double f = 12.0 / 240.0;
    for (std::size_t t = 0; t < 240; ++t)
        s.values[t] = 2.0 * std::sin(kTwoPi * f * s.times[t] + std::numbers::pi / 4.0);
    const std::vector<double> freqs{f};
    const HarmonicModel m = fit_harmonics(s, freqs);
    REQUIRE(m.terms.size() == 1);
    CHECK(m.terms[0].amplitude == doctest::Approx(2.0).epsilon(1e-8));
    const double want_phase = std::numbers::pi / 4.0 - std::numbers::pi / 2.0;
    CHECK(m.terms[0].phase == doctest::Approx(want_phase).epsilon(1e-8));
}

TEST_CASE("harmonic fits on white noise shrink with sample size") {
    int within = 0, trials = 0;
    const std::vector<double> freqs{0.07, 0.21};
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        CounterRng rng(seed);
        for (std::size_t n : {256u, 1024u}) {
            SampledSeries s = regular_grid(n);
            for (std::size_t t = 0; t < n; ++t) s.values[t] = 2.0 * rng.gaussian(t);
            const HarmonicModel m = fit_harmonics(s, freqs);
            const double bound = 5.0 * 2.0 * std::sqrt(2.0 / static_cast<double>(n));
            for (const auto& term : m.terms) {
                ++trials;
                if (term.amplitude < bound) ++within;
            }
        }
    }
    CHECK(within >= trials * 95 / 100);
}

TEST_CASE("fit matches the extended-precision least-squares oracle") {
    const SampledSeries s = five_tone_fixture(300, 0.5, 31);
    const std::vector<double> freqs{1.0 / 87.3, 1.0 / 196.5};
    const HarmonicModel m = fit_harmonics(s, freqs);
    std::vector<std::vector<double>> cols;
    for (double f : freqs) {
        std::vector<double> c(s.size()), d(s.size());
        for (std::size_t t = 0; t < s.size(); ++t) {
            c[t] = std::cos(kTwoPi * f * s.times[t]);
            d[t] = std::sin(kTwoPi * f * s.times[t]);
        }
        cols.push_back(std::move(c));
        cols.push_back(std::move(d));
    }
    const auto beta = oracle::least_squares(cols, s.values);
    REQUIRE(m.terms.size() == 2);
    CHECK(m.terms[0].cos_coef == doctest::Approx(beta[0]).epsilon(1e-9));
    CHECK(m.terms[0].sin_coef == doctest::Approx(beta[1]).epsilon(1e-9));
    CHECK(m.terms[1].cos_coef == doctest::Approx(beta[2]).epsilon(1e-9));
    CHECK(m.terms[1].sin_coef == doctest::Approx(beta[3]).epsilon(1e-9));
}

TEST_CASE("fit validation") {
    SampledSeries s = regular_grid(10);
    for (std::size_t t = 0; t < 10; ++t) s.values[t] = static_cast<double>(t % 3);
    const std::vector<double> too_many{0.1, 0.2, 0.3, 0.4, 0.45};
    CHECK_THROWS_AS(fit_harmonics(s, too_many), RankError);
    const std::vector<double> bad_freq{0.0};
    CHECK_THROWS_AS(fit_harmonics(s, bad_freq), ParamError);
    const std::vector<double> above_nyquist{0.51};
    CHECK_THROWS_AS(fit_harmonics(s, above_nyquist), ParamError);
    const std::vector<double> duplicated{0.1, 0.1};
    CHECK_THROWS_AS(fit_harmonics(s, duplicated), RankError);
    SampledSeries empty;
    CHECK_THROWS_AS(fit_harmonics(empty, std::vector<double>{0.1}), EmptySeriesError);
}

TEST_CASE("empty model reconstructs to zero") {
    HarmonicModel m;
    const auto out = reconstruct(m, std::vector<double>{0.0, 1.5, 100.0});
    CHECK(out == std::vector<double>{0.0, 0.0, 0.0});
    CHECK(m.value_at(3.0) == 0.0);
}

TEST_CASE("training tone round-trips through the model") {
    SampledSeries s = regular_grid(160);
    const double f = 8.0 / 160.0;
    for (std::size_t t = 0; t < 160; ++t)
        s.values[t] = 1.7 * std::cos(kTwoPi * f * s.times[t] + 0.4);
    const std::vector<double> freqs{f};
    const HarmonicModel m = fit_harmonics(s, freqs);
    const auto back = reconstruct(m, s.times);
    for (std::size_t t = 0; t < s.size(); ++t) CHECK(std::fabs(back[t] - s.values[t]) < 1e-8);
}

TEST_CASE("a two-term model at time zero sums its cosine coefficients") {
    HarmonicModel m;
    m.terms.push_back(HarmonicTerm{0.1, 2.0, -1.0, std::sqrt(5.0), std::atan2(1.0, 2.0)});
    m.terms.push_back(HarmonicTerm{0.2, -0.5, 3.0, std::sqrt(9.25), std::atan2(-3.0, -0.5)});
    CHECK(m.value_at(0.0) == doctest::Approx(2.0 + -0.5).epsilon(1e-12));
}

TEST_CASE("adding frequencies never raises the training rss") {
    const SampledSeries s = five_tone_fixture(400, 0.4, 15);
    std::vector<double> freqs;
    double prev = -1.0;
    for (double period : kFixturePeriods) {
        freqs.push_back(1.0 / period);
        const HarmonicModel m = fit_harmonics(s, freqs);
        const double cur = rss_against(s, m);
        if (prev >= 0.0) CHECK(cur <= prev + 1e-9 * (1.0 + prev));
        prev = cur;
    }
}

TEST_CASE("pipeline fit composes detrend spectrum peaks and refit") {
    SampledSeries s = five_tone_fixture(786, 0.2, 2024);
    for (std::size_t t = 0; t < s.size(); ++t) {
        const double x = s.times[t];
        s.values[t] += 100.0 + 0.08 * x - 1e-4 * x * x;
    }
    PipelineOptions opt;
    opt.order = 5;
    opt.method = Method::classical;
    opt.k = 5;
    const PipelineFit fit = fit_pipeline(s, opt);
    CHECK(fit.trend.order == 5);
    CHECK(fit.peaks.size() == 5);
    CHECK(fit.model.terms.size() == 5);
    REQUIRE(fit.model.attached_trend.has_value());
    CHECK(fit.model.attached_trend->order == 5);
    // reconstruction with trend approximates the raw series
    const auto recon = reconstruct(fit.model, s.times, true);
    double err = 0.0, scale = 0.0;
    for (std::size_t t = 0; t < s.size(); ++t) {
        err += (recon[t] - s.values[t]) * (recon[t] - s.values[t]);
        scale += s.values[t] * s.values[t];
    }
    CHECK(err / scale < 0.01);
}

TEST_CASE("pipeline k zero yields the empty model") {
    const SampledSeries s = five_tone_fixture(256, 0.3, 5);
    PipelineOptions opt;
    opt.order = 2;
    opt.k = 0;
    const PipelineFit fit = fit_pipeline(s, opt);
    CHECK(fit.peaks.empty());
    CHECK(fit.model.terms.empty());
    const auto zeros = reconstruct(fit.model, s.times);
    for (double v : zeros) CHECK(v == 0.0);
}

TEST_CASE("pipeline insists on regular sampling for classical and welch") {
    SampledSeries gappy;
    for (std::size_t t = 0; t < 300; ++t) {
        if (t % 9 == 4) continue;
        gappy.times.push_back(static_cast<double>(t));
        gappy.values.push_back(std::cos(kTwoPi * 0.02 * static_cast<double>(t)));
    }
    PipelineOptions opt;
    opt.order = 1;
    opt.k = 1;
    opt.method = Method::classical;
    CHECK_THROWS_AS(fit_pipeline(gappy, opt), ParamError);
    opt.method = Method::welch;
    CHECK_THROWS_AS(fit_pipeline(gappy, opt), ParamError);
    opt.method = Method::lomb;
    const PipelineFit fit = fit_pipeline(gappy, opt);
    CHECK(fit.spectrum.method == "lomb_scargle");
    REQUIRE(fit.peaks.size() == 1);
    CHECK(std::fabs(fit.peaks[0].frequency - 0.02) <= fit.spectrum.bin_width + 1e-15);
}
