#pragma once

#include <cstddef>
#include <span>

namespace periodica {

/// The four accuracy measures over a pair of aligned sequences Y (actual)
/// and E (expected/predicted). smape is stored as a fraction in [0, 1];
/// reports also print it as a percentage.
struct ScoreCard {
    double chi2 = 0.0;
    int chi2_dof = 0;
    double smape = 0.0;
    double mae = 0.0;
    double rmse = 0.0;
    std::size_t n = 0;
};

struct ChiSquared {
    double statistic = 0.0;
    int dof = 0;
};

/// Sum of (Y_t - E_t)^2 / E_t with dof = n - 1, applied literally: expected
/// values may be negative on the detrended scale, so the statistic may be
/// negative. Any |E_t| < 1e-12 throws DivisionByNearZeroError listing the
/// offending indices.
ChiSquared chi_squared(std::span<const double> actual, std::span<const double> expected);

/// Mean of |Y_t - E_t| / (|Y_t| + |E_t|); pairs that are both zero
/// contribute 0. The denominator is used exactly as printed in the source
/// material (no factor 2); `halved_denominator` switches to the conventional
/// (|Y|+|E|)/2 form for comparison.
double smape(std::span<const double> actual, std::span<const double> expected,
             bool halved_denominator = false);

/// Mean absolute error.
double mae(std::span<const double> actual, std::span<const double> expected);

/// Root mean square error.
double rmse(std::span<const double> actual, std::span<const double> expected);

/// All four measures at once.
ScoreCard score(std::span<const double> actual, std::span<const double> expected);

}  // namespace periodica
