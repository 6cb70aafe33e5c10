#include "periodica/metrics.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "periodica/errors.hpp"

namespace periodica {

namespace {

void check_lengths(std::span<const double> actual, std::span<const double> expected,
                   const char* op) {
    if (actual.size() != expected.size())
        throw ParamError(std::string(op) + ": sequences differ in length (" +
                         std::to_string(actual.size()) + " vs " +
                         std::to_string(expected.size()) + ")");
    if (actual.empty()) throw ParamError(std::string(op) + ": sequences are empty");
}

}  // namespace

ChiSquared chi_squared(std::span<const double> actual, std::span<const double> expected) {
    check_lengths(actual, expected, "chi_squared");

    std::vector<std::size_t> near_zero;
    for (std::size_t i = 0; i < expected.size(); ++i)
        if (std::abs(expected[i]) < 1e-12) near_zero.push_back(i);
    if (!near_zero.empty()) {
        std::string msg = "chi_squared: expected values within 1e-12 of zero at indices ";
        const std::size_t shown = std::min<std::size_t>(near_zero.size(), 10);
        for (std::size_t i = 0; i < shown; ++i) {
            if (i) msg += ", ";
            msg += std::to_string(near_zero[i]);
        }
        if (near_zero.size() > shown)
            msg += " and " + std::to_string(near_zero.size() - shown) + " more";
        throw DivisionByNearZeroError(msg);
    }

    ChiSquared out;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double d = actual[i] - expected[i];
        out.statistic += d * d / expected[i];
    }
    out.dof = static_cast<int>(actual.size()) - 1;
    return out;
}

double smape(std::span<const double> actual, std::span<const double> expected,
             bool halved_denominator) {
    check_lengths(actual, expected, "smape");
    double sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double denom = std::abs(actual[i]) + std::abs(expected[i]);
        if (denom == 0.0) continue;
        const double term = std::abs(actual[i] - expected[i]) / denom;
        sum += halved_denominator ? 2.0 * term : term;
    }
    return sum / static_cast<double>(actual.size());
}

double mae(std::span<const double> actual, std::span<const double> expected) {
    check_lengths(actual, expected, "mae");
    double sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) sum += std::abs(actual[i] - expected[i]);
    return sum / static_cast<double>(actual.size());
}

double rmse(std::span<const double> actual, std::span<const double> expected) {
    check_lengths(actual, expected, "rmse");
    double sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double d = actual[i] - expected[i];
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(actual.size()));
}

ScoreCard score(std::span<const double> actual, std::span<const double> expected) {
    ScoreCard card;
    const ChiSquared chi = chi_squared(actual, expected);
    card.chi2 = chi.statistic;
    card.chi2_dof = chi.dof;
    card.smape = smape(actual, expected);
    card.mae = mae(actual, expected);
    card.rmse = rmse(actual, expected);
    card.n = actual.size();
    return card;
}

}  // namespace periodica
