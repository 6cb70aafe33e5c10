#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "periodica/detrend.hpp"
#include "periodica/ingest.hpp"
#include "periodica/spectral.hpp"

namespace periodica {

/// One fitted sinusoid a*cos(2*pi*f*t) + b*sin(2*pi*f*t), also expressed as
/// amplitude*cos(2*pi*f*t + phase) with amplitude = sqrt(a^2 + b^2) and
/// phase = atan2(-b, a).
struct HarmonicTerm {
    double frequency = 0.0;  ///< cycles per month, in (0, 0.5]
    double cos_coef = 0.0;
    double sin_coef = 0.0;
    double amplitude = 0.0;
    double phase = 0.0;

    double period() const noexcept { return 1.0 / frequency; }
};

/// Sum of fitted sinusoids. There is no intercept: an empty model evaluates
/// to zero everywhere.
struct HarmonicModel {
    std::vector<HarmonicTerm> terms;
    double t_min = 0.0;  ///< first training time
    double t_max = 0.0;  ///< last training time
    std::optional<PolyTrend> attached_trend;

    /// Harmonic sum alone; the attached trend is not included.
    double value_at(double t) const noexcept;
};

/// A selected spectral peak with its power bookkeeping. Shares are reported
/// against two denominators because either reading of "contribution to the
/// variance" is defensible: the whole spectrum and the selected bins only.
struct PeakInfo {
    std::size_t bin = 0;        ///< index into the source estimate's freqs
    double frequency = 0.0;
    double power = 0.0;
    double share_total = 0.0;   ///< power / sum over all bins
    double share_selected = 0.0;///< power / sum over the returned peaks
};

/// The k strongest spectral peaks, ordered by descending power; equal-power
/// ties rank the lower frequency first.
///
/// Selection is greedy with a minimum separation of one resolution width
/// (the estimate's bin_width): on oversampled grids one sinusoid spreads
/// over several adjacent grid points, and ranking raw bins would return one
/// lobe k times. Bins exactly one width apart remain individually
/// selectable, so adjacent bins of a critically sampled Fourier grid can
/// all be returned. Fewer than k results when the separation rule exhausts
/// the grid. Requires 1 <= k <= number of bins.
std::vector<PeakInfo> top_k_frequencies(const SpectralEstimate& est, int k);

/// Least-squares fit of x_t ~ sum_j a_j cos(2*pi*f_j*t) + b_j sin(...) with
/// regressors evaluated at the true sample times. Requires
/// 2*|freqs| < n and each frequency in (0, 0.5]. Duplicate or aliased
/// frequencies make the design collinear and throw RankError.
HarmonicModel fit_harmonics(const SampledSeries& s, std::span<const double> freqs);

/// Model values at the requested times. When `with_trend` is set and the
/// model carries an attached trend, the trend values are added.
std::vector<double> reconstruct(const HarmonicModel& model, std::span<const double> times,
                                bool with_trend = false);

/// Knobs shared by the analysis and forecast pipelines.
struct PipelineOptions {
    int order = 5;                      ///< polynomial trend order
    Method method = Method::classical;  ///< spectrum estimator
    int k = 5;                          ///< number of harmonics kept
    WelchOptions welch;                 ///< used when method is welch
    double lomb_oversample = 4.0;       ///< used when method is lomb
    double lomb_fmax = 0.5;             ///< used when method is lomb
};

/// Everything fitted by one pass of detrend -> spectrum -> peaks -> refit.
struct PipelineFit {
    PolyTrend trend;
    SampledSeries residual;       ///< detrended values the spectrum was taken from
    SpectralEstimate spectrum;
    std::vector<PeakInfo> peaks;  ///< descending spectral power
    HarmonicModel model;          ///< carries the trend as attached_trend
};

/// Runs the shared fitting pass. The classical and welch estimators insist
/// on gap-free monthly sampling and throw ParamError otherwise; lomb accepts
/// any strictly increasing time grid. k = 0 skips peak selection and yields
/// an empty (identically zero) harmonic model.
PipelineFit fit_pipeline(const SampledSeries& s, const PipelineOptions& opt);

/// Forecast controls. A negative horizon means "to the end of the input".
struct ForecastConfig {
    PipelineOptions pipeline;
    ShockCalendar calendar;  ///< windows excised before fitting
    YearMonth cutoff;        ///< last month visible to the fit
    int horizon = -1;        ///< months predicted past the cutoff
};

/// A model fitted strictly before the cutoff, with its projections.
struct ForecastResult {
    YearMonth cutoff;
    std::vector<double> horizon_times;  ///< month offsets past the cutoff
    MonthlySeries predicted;            ///< harmonic sum, detrended scale
    MonthlySeries predicted_with_trend; ///< harmonic sum plus extrapolated trend
    HarmonicModel model;                ///< carries the pre-cutoff trend
    SpectralEstimate spectrum;
    std::vector<PeakInfo> peaks;
    MonthlySeries fitted;               ///< in-sample trend + harmonics, for plots
};

/// Fits on data up to and including the cutoff month only, then projects the
/// harmonic sum and the trend forward. Values after the cutoff never touch
/// any fitting step. Requires at least 120 months before the cutoff and at
/// least one month after it. When the calendar excision leaves gaps the
/// spectrum is estimated with Lomb-Scargle regardless of the configured
/// method, since the other estimators need regular sampling.
ForecastResult forecast(const MonthlySeries& series, const ForecastConfig& cfg);

/// Deflating variant: slices the raw index at the cutoff, deflates with the
/// CPI at the given base month (which must not lie past the cutoff), then
/// proceeds as above.
ForecastResult forecast(const MonthlySeries& raw, const MonthlySeries& cpi, YearMonth base,
                        const ForecastConfig& cfg);

}  // namespace periodica
