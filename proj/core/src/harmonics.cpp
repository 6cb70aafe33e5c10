#include "periodica/harmonics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "periodica/errors.hpp"

namespace periodica {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool regular_unit_sampling(std::span<const double> times) {
    for (std::size_t i = 1; i < times.size(); ++i)
        if (std::abs((times[i] - times[i - 1]) - 1.0) > 1e-9) return false;
    return true;
}

}  // namespace

double HarmonicModel::value_at(double t) const noexcept {
    double acc = 0.0;
    for (const auto& term : terms) {
        const double arg = kTwoPi * term.frequency * t;
        acc += term.cos_coef * std::cos(arg) + term.sin_coef * std::sin(arg);
    }
    return acc;
}

std::vector<PeakInfo> top_k_frequencies(const SpectralEstimate& est, int k) {
    if (est.size() == 0) throw EmptySeriesError("top_k_frequencies: spectrum is empty");
    if (est.power.size() != est.freqs.size())
        throw ParamError("top_k_frequencies: malformed spectrum");
    if (k < 1) throw ParamError("top_k_frequencies: k must be at least 1");
    if (static_cast<std::size_t>(k) > est.size())
        throw ParamError("top_k_frequencies: k exceeds the number of bins");

    const auto& p = est.power;
    const std::size_t m = p.size();
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&p](std::size_t a, std::size_t b) {
        if (p[a] != p[b]) return p[a] > p[b];
        return a < b;
    });

    // Bins closer than one resolution width to an already selected bin are
    // sidelobes or shoulders of the same feature, not new periodicities.
    // Neighbors exactly one width apart stay eligible, so adjacent Fourier
    // bins of a critically sampled grid are still individually selectable.
    const double radius = est.bin_width > 0.0 ? est.bin_width * (1.0 - 1e-9) : 0.0;
    std::vector<std::size_t> candidates;
    for (std::size_t idx : order) {
        bool shadowed = false;
        for (std::size_t c : candidates)
            if (std::abs(est.freqs[idx] - est.freqs[c]) < radius) {
                shadowed = true;
                break;
            }
        if (shadowed) continue;
        candidates.push_back(idx);
        if (candidates.size() == static_cast<std::size_t>(k)) break;
    }

    double total = 0.0;
    for (double v : p) total += v;
    double selected = 0.0;
    for (std::size_t c : candidates) selected += p[c];

    std::vector<PeakInfo> peaks(candidates.size());
    for (std::size_t r = 0; r < candidates.size(); ++r) {
        auto& peak = peaks[r];
        peak.bin = candidates[r];
        peak.frequency = est.freqs[peak.bin];
        peak.power = p[peak.bin];
        peak.share_total = total > 0.0 ? peak.power / total : 0.0;
        peak.share_selected = selected > 0.0 ? peak.power / selected : 0.0;
    }
    return peaks;
}

HarmonicModel fit_harmonics(const SampledSeries& s, std::span<const double> freqs) {
    const std::size_t n = s.size();
    if (s.times.size() != s.values.size())
        throw ParamError("fit_harmonics: times and values differ in length");
    if (n == 0) throw EmptySeriesError("fit_harmonics: series is empty");
    for (double f : freqs)
        if (!(f > 0.0) || f > 0.5 + 1e-12)
            throw ParamError("fit_harmonics: frequencies must lie in (0, 0.5]");

    const std::size_t m = freqs.size();
    if (2 * m >= n)
        throw RankError("fit_harmonics: " + std::to_string(2 * m) +
                        " coefficients need more than " + std::to_string(2 * m) +
                        " observations, got " + std::to_string(n));

    HarmonicModel model;
    model.t_min = s.times.front();
    model.t_max = s.times.back();
    if (m == 0) return model;

    const auto cols = static_cast<Eigen::Index>(2 * m);
    Eigen::MatrixXd X(static_cast<Eigen::Index>(n), cols);
    Eigen::VectorXd b(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double arg = kTwoPi * freqs[j] * s.times[i];
            X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(2 * j)) = std::cos(arg);
            X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(2 * j + 1)) = std::sin(arg);
        }
        b(static_cast<Eigen::Index>(i)) = s.values[i];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    const Eigen::VectorXd diag = qr.matrixQR().diagonal().head(cols).cwiseAbs();
    const double dmax = diag.maxCoeff();
    const double dmin = diag.minCoeff();
    if (!(dmax > 0.0) || dmin / dmax < 1e-13)
        throw RankError("fit_harmonics: collinear regressors (duplicate or aliased frequencies)");

    const Eigen::VectorXd c = qr.solve(b);
    model.terms.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        auto& term = model.terms[j];
        term.frequency = freqs[j];
        term.cos_coef = c(static_cast<Eigen::Index>(2 * j));
        term.sin_coef = c(static_cast<Eigen::Index>(2 * j + 1));
        term.amplitude = std::hypot(term.cos_coef, term.sin_coef);
        term.phase = std::atan2(-term.sin_coef, term.cos_coef);
    }
    return model;
}

std::vector<double> reconstruct(const HarmonicModel& model, std::span<const double> times,
                                bool with_trend) {
    std::vector<double> out(times.size());
    const bool add_trend = with_trend && model.attached_trend.has_value();
    for (std::size_t i = 0; i < times.size(); ++i) {
        out[i] = model.value_at(times[i]);
        if (add_trend) out[i] += model.attached_trend->evaluate(times[i]);
    }
    return out;
}

PipelineFit fit_pipeline(const SampledSeries& s, const PipelineOptions& opt) {
    if (opt.k < 0) throw ParamError("fit_pipeline: k must be non-negative");

    PipelineFit out;
    out.trend = fit_polynomial(s, opt.order);
    out.residual = detrend(s, out.trend);

    switch (opt.method) {
        case Method::classical:
            if (!regular_unit_sampling(out.residual.times))
                throw ParamError(
                    "classical periodogram needs gap-free monthly sampling; use method lomb");
            out.spectrum = periodogram(out.residual.values);
            break;
        case Method::welch:
            if (!regular_unit_sampling(out.residual.times))
                throw ParamError(
                    "welch estimator needs gap-free monthly sampling; use method lomb");
            out.spectrum = welch(out.residual.values, opt.welch);
            break;
        case Method::lomb:
            out.spectrum = lomb_scargle(
                out.residual, default_lomb_grid(out.residual, opt.lomb_oversample, opt.lomb_fmax));
            break;
    }

    std::vector<double> freqs;
    if (opt.k > 0) {
        out.peaks = top_k_frequencies(out.spectrum, opt.k);
        freqs.reserve(out.peaks.size());
        for (const auto& peak : out.peaks) freqs.push_back(peak.frequency);
    }
    out.model = fit_harmonics(out.residual, freqs);
    out.model.attached_trend = out.trend;
    return out;
}

namespace {

void check_cutoff_inside(const MonthlySeries& series, YearMonth cutoff) {
    if (series.size() == 0) throw EmptySeriesError("forecast: series is empty");
    if (cutoff < series.start || series.last_month() < cutoff)
        throw ParamError("forecast: cutoff " + cutoff.str() + " is outside the series");
    if (cutoff == series.last_month())
        throw ParamError("forecast: cutoff must lie strictly before the final observation");
    const int before = months_between(series.start, cutoff);
    if (before < 120)
        throw ParamError("forecast: need at least 120 months before the cutoff, got " +
                         std::to_string(before));
}

MonthlySeries slice_through(const MonthlySeries& series, YearMonth cutoff) {
    MonthlySeries sliced;
    sliced.start = series.start;
    sliced.label = series.label;
    const int keep = months_between(series.start, cutoff) + 1;
    sliced.values.assign(series.values.begin(), series.values.begin() + keep);
    return sliced;
}

ForecastResult forecast_impl(const MonthlySeries& sliced, int horizon,
                             const ForecastConfig& cfg) {
    const int keep = static_cast<int>(sliced.size());
    const SampledSeries visible = excise(sliced, cfg.calendar);

    PipelineOptions opt = cfg.pipeline;
    if (!regular_unit_sampling(visible.times)) opt.method = Method::lomb;

    PipelineFit fit = fit_pipeline(visible, opt);

    ForecastResult out;
    out.cutoff = cfg.cutoff;
    out.model = std::move(fit.model);
    out.spectrum = std::move(fit.spectrum);
    out.peaks = std::move(fit.peaks);

    const PolyTrend& trend = *out.model.attached_trend;
    out.fitted.start = sliced.start;
    out.fitted.label = "fitted";
    out.fitted.values.resize(static_cast<std::size_t>(keep));
    for (int t = 0; t < keep; ++t)
        out.fitted.values[static_cast<std::size_t>(t)] =
            trend.evaluate(t) + out.model.value_at(t);

    out.predicted.start = cfg.cutoff.plus_months(1);
    out.predicted.label = "predicted";
    out.predicted_with_trend.start = out.predicted.start;
    out.predicted_with_trend.label = "predicted-with-trend";
    out.horizon_times.resize(static_cast<std::size_t>(horizon));
    out.predicted.values.resize(static_cast<std::size_t>(horizon));
    out.predicted_with_trend.values.resize(static_cast<std::size_t>(horizon));
    for (int h = 0; h < horizon; ++h) {
        const double t = static_cast<double>(keep + h);
        const double cycle = out.model.value_at(t);
        out.horizon_times[static_cast<std::size_t>(h)] = t;
        out.predicted.values[static_cast<std::size_t>(h)] = cycle;
        out.predicted_with_trend.values[static_cast<std::size_t>(h)] = trend.evaluate(t) + cycle;
    }
    return out;
}

}  // namespace

ForecastResult forecast(const MonthlySeries& series, const ForecastConfig& cfg) {
    check_cutoff_inside(series, cfg.cutoff);
    const int horizon =
        cfg.horizon < 0 ? months_between(cfg.cutoff, series.last_month()) : cfg.horizon;
    return forecast_impl(slice_through(series, cfg.cutoff), horizon, cfg);
}

ForecastResult forecast(const MonthlySeries& raw, const MonthlySeries& cpi, YearMonth base,
                        const ForecastConfig& cfg) {
    check_cutoff_inside(raw, cfg.cutoff);
    if (cfg.cutoff < base)
        throw ParamError("forecast: deflation base " + base.str() +
                         " lies past the cutoff and would leak future scale");
    const int horizon =
        cfg.horizon < 0 ? months_between(cfg.cutoff, raw.last_month()) : cfg.horizon;
    return forecast_impl(deflate(slice_through(raw, cfg.cutoff), cpi, base), horizon, cfg);
}

}  // namespace periodica
