#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "periodica/detrend.hpp"
#include "periodica/harmonics.hpp"
#include "periodica/ingest.hpp"
#include "periodica/metrics.hpp"
#include "periodica/spectral.hpp"
#include "periodica/stats.hpp"

namespace periodica {

/// Shortest text that parses back to exactly the same double (%.17g).
std::string format_double(double v);

/// FNV-1a 64-bit digest, used to fingerprint input files in run manifests.
std::uint64_t fnv1a64(const void* data, std::size_t len);

/// Digest of a file's bytes. Throws IoError when unreadable.
std::uint64_t fnv1a64_file(const std::string& path);

/// 16-digit lowercase hex form of a digest.
std::string hex_digest(std::uint64_t digest);

/// Reads a whole file. Throws IoError when unreadable.
std::string read_text_file(const std::string& path);

/// Writes a whole file. Throws IoError on failure.
void write_text_file(const std::string& path, const std::string& content);

/// JSON {order, coeffs, fit_range} and its inverse.
std::string trend_json(const PolyTrend& trend);
PolyTrend trend_from_json(std::string_view text);

/// JSON for a fitted harmonic model: terms with period in months,
/// coefficients, amplitude, phase and (when `peaks` aligns with the terms)
/// variance shares, plus the fit range and any attached trend. Formatting is
/// deterministic: identical models serialize to identical bytes.
std::string model_json(const HarmonicModel& model, std::span<const PeakInfo> peaks = {});

/// JSON {test_name, statistic, dof, p_value}.
std::string test_report_json(const TestReport& report);

/// JSON of all four measures; pass has_chi2 = false when the chi-squared
/// statistic is undefined (near-zero expected values), which emits null.
std::string scorecard_json(const ScoreCard& card, bool has_chi2 = true);

/// Spectrum metadata as JSON: method, n_effective, bin_width,
/// variance_total and any invalid grid frequencies.
std::string spectrum_json(const SpectralEstimate& est);

/// CSV freq,period_months,power,variance_share (share of summed power).
std::string spectrum_csv(const SpectralEstimate& est);

/// CSV date,t,value for a possibly gappy series anchored at `start`.
std::string sampled_csv(const SampledSeries& s, YearMonth start,
                        const std::string& value_label = "value");

/// CSV lag,rho,lower,upper with the +-2/sqrt(n) white-noise band.
std::string correlogram_csv(const AcfResult& acf);

/// CSV date,actual,predicted,predicted_with_trend over the forecast horizon;
/// the actual column is left empty where `actual` has no observation.
std::string forecast_csv(const ForecastResult& fc, const MonthlySeries* actual);

/// Aligned text table of labeled score cards, one column per label.
std::string scorecard_table(std::span<const std::pair<std::string, ScoreCard>> cards);

/// Aligned text table of selected peaks: rank, frequency, period, power,
/// shares and (when the model aligns) fitted amplitude.
std::string peaks_table(std::span<const PeakInfo> peaks, const HarmonicModel& model);

}  // namespace periodica
