#pragma once

#include <span>
#include <vector>

#include "periodica/ingest.hpp"

namespace periodica {

/// Polynomial trend in a scaled time coordinate.
///
/// Fitting maps [t_min, t_max] onto [-1, 1] via s = (t - mid) / half before
/// building the design matrix, which keeps the system well conditioned for
/// the orders used here (up to 12). `coeffs` holds the coefficients of
/// 1, s, s^2, ... in ascending order; its length is order + 1.
struct PolyTrend {
    int order = 0;
    double t_min = 0.0;
    double t_max = 1.0;
    std::vector<double> coeffs;

    /// Trend value at an arbitrary time, evaluated by Horner's rule.
    /// Times outside [t_min, t_max] extrapolate the polynomial.
    double evaluate(double t) const noexcept;
};

/// Default polynomial order used for a country's index: 6 for Japan,
/// 5 otherwise.
int default_detrend_order(Country c) noexcept;

/// Least-squares polynomial fit of the given order on the scaled basis,
/// solved by column-pivoted QR. Orders above 12 are rejected (ParamError).
/// Throws RankError when the sample has too few points for the order and
/// ConditioningError when the triangular factor is numerically singular.
PolyTrend fit_polynomial(const SampledSeries& s, int order);

/// Monthly convenience overload; times are the 0-based sample offsets.
PolyTrend fit_polynomial(const MonthlySeries& s, int order);

/// Subtracts the trend pointwise; times are unchanged.
SampledSeries detrend(const SampledSeries& s, const PolyTrend& trend);

/// Trend values at the requested times.
std::vector<double> evaluate_trend(const PolyTrend& trend, std::span<const double> times);

}  // namespace periodica
