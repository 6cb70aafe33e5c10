#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "periodica/ingest.hpp"

namespace periodica {

/// Spectral estimation method selector, as exposed on the command line.
enum class Method { classical, welch, lomb };

Method parse_method(std::string_view name);
const char* method_name(Method m) noexcept;

/// Taper applied to each segment before transforming.
enum class Window { rect, hanning };

Window parse_window(std::string_view name);
const char* window_name(Window w) noexcept;

/// Taper weights of the given length. Hanning is 0.5*(1 - cos(2*pi*t/(L-1))).
std::vector<double> window_weights(Window w, std::size_t length);

/// Parameters of the segment-averaged estimator.
struct WelchOptions {
    std::size_t segment = 0;         ///< segment length; 0 means floor(n/2)
    double overlap = 0.5;            ///< fraction shared with the next segment, in [0, 0.9]
    Window window = Window::hanning; ///< per-segment taper
};

/// Output scale of the least-squares spectrum. Under this library's
/// unit-normalized transform the raw form already coincides with classical
/// periodogram values on regular sampling, so both modes produce identical
/// numbers; the selector is kept so callers can state their intent.
enum class LombNormalization { raw, psd_equivalent };

/// A one-sided power spectrum on a discrete frequency grid.
///
/// Frequencies are in cycles per sampling step (months here), ascending,
/// within (0, 0.5]. `power` is aligned with `freqs`; grid points whose
/// estimator denominators were numerically degenerate are dropped from both
/// and listed in `invalid_freqs` instead of carrying fabricated values.
struct SpectralEstimate {
    std::vector<double> freqs;
    std::vector<double> power;
    std::vector<double> invalid_freqs;
    std::string method;           ///< "classical", "welch", or "lomb_scargle"
    std::size_t n_effective = 0;  ///< transform length (classical/welch) or sample count (lomb)
    double bin_width = 0.0;       ///< frequency resolution: 1/n, 1/segment, or 1/span
    double variance_total = 0.0;  ///< biased variance of the analyzed values

    std::size_t size() const noexcept { return freqs.size(); }
};

/// Result of reconciling the variance of a series with its spectrum.
struct ParsevalReport {
    double variance = 0.0;      ///< biased sample variance of the input
    double spectral_sum = 0.0;  ///< sum of squared-amplitude contributions per bin
    double relative_gap = 0.0;  ///< |variance - spectral_sum| / variance
};

/// Discrete Fourier transform with unitary normalization:
/// d_j = n^{-1/2} * sum_t x_t exp(-2*pi*i*j*t/n), j = 0..n-1. Needs n >= 2.
///
/// Dispatches to a radix-2 transform when n is a power of two and to the
/// table-driven direct evaluation otherwise. Both routes agree to better
/// than 1e-9 relative and tests hold them to that.
std::vector<std::complex<double>> dft(std::span<const double> x);

/// Direct O(n^2) evaluation of the same transform, kept as an independent
/// route for cross-checking the fast path.
std::vector<std::complex<double>> dft_direct(std::span<const double> x);

/// Classical periodogram I(f_j) = |d_j|^2 at f_j = j/n, j = 1..floor(n/2).
/// The mean is removed before transforming, so the j = 0 bin is excluded.
/// Needs n >= 4.
SpectralEstimate periodogram(std::span<const double> values);

/// Periodogram rescaled by 4/n so an interior bin reads as the squared
/// amplitude of a sinusoid at that exact frequency. A cosine of amplitude A
/// at bin j yields power A^2 there (the Nyquist bin, present for even n,
/// reads 4*a^2 under this scale).
SpectralEstimate scaled_periodogram(std::span<const double> values);

/// Checks that the biased sample variance equals the spectral mass
/// sum_{j=1..n/2-1} A_j^2/2, plus a_{n/2}^2 when n is even. Throws
/// DegenerateError on zero-variance input.
ParsevalReport parseval_check(std::span<const double> values);

/// Segment-averaged periodogram: each segment is mean-removed, tapered,
/// transformed, normalized by the taper power sum(w^2)/L, then averaged.
/// Segment starts advance by max(1, floor(L*(1-overlap))).
SpectralEstimate welch(std::span<const double> values, const WelchOptions& opt = {});

/// Frequency grid for unevenly sampled series: multiples of
/// 1/(oversample*span) up to fmax <= 0.5, where span = t_last - t_first.
std::vector<double> default_lomb_grid(const SampledSeries& s, double oversample = 4.0,
                                      double fmax = 0.5);

/// Least-squares spectrum for unevenly sampled data. For each frequency the
/// phase origin tau solves tan(2*w*tau) = sum sin(2*w*t) / sum cos(2*w*t),
/// and the power is (C^2/CC + S^2/SS)/2 with C, S the cosine/sine
/// projections of the mean-removed values at the shifted phase. On a regular
/// grid this reproduces the classical periodogram at the Fourier
/// frequencies. Grid points where CC or SS falls below n*1e-12 are reported
/// in `invalid_freqs` rather than evaluated. Needs n >= 4.
SpectralEstimate lomb_scargle(const SampledSeries& s, std::span<const double> freqs,
                              LombNormalization norm = LombNormalization::psd_equivalent);

/// Lomb-Scargle on the default grid (oversample 4, fmax 0.5).
SpectralEstimate lomb_scargle(const SampledSeries& s,
                              LombNormalization norm = LombNormalization::psd_equivalent);

}  // namespace periodica
