#include "periodica/detrend.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "periodica/errors.hpp"

namespace periodica {

double PolyTrend::evaluate(double t) const noexcept {
    const double mid = 0.5 * (t_min + t_max);
    double half = 0.5 * (t_max - t_min);
    if (half == 0.0) half = 1.0;
    const double s = (t - mid) / half;
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * s + *it;
    return acc;
}

int default_detrend_order(Country c) noexcept { return c == Country::Japan ? 6 : 5; }

PolyTrend fit_polynomial(const SampledSeries& s, int order) {
    if (order < 0) throw ParamError("fit_polynomial: order must be non-negative");
    if (order > 12) throw ParamError("fit_polynomial: order must not exceed 12");
    const std::size_t n = s.size();
    if (s.times.size() != s.values.size())
        throw ParamError("fit_polynomial: times and values differ in length");
    if (n == 0) throw EmptySeriesError("fit_polynomial: series is empty");
    if (n <= static_cast<std::size_t>(order))
        throw RankError("fit_polynomial: order " + std::to_string(order) +
                        " needs more than " + std::to_string(order) + " observations, got " +
                        std::to_string(n));
    for (std::size_t i = 1; i < n; ++i)
        if (!(s.times[i] > s.times[i - 1]))
            throw ParamError("fit_polynomial: times must be strictly increasing");

    PolyTrend trend;
    trend.order = order;
    trend.t_min = s.times.front();
    trend.t_max = s.times.back();
    const double mid = 0.5 * (trend.t_min + trend.t_max);
    double half = 0.5 * (trend.t_max - trend.t_min);
    if (half == 0.0) half = 1.0;

    const auto cols = static_cast<Eigen::Index>(order) + 1;
    Eigen::MatrixXd X(static_cast<Eigen::Index>(n), cols);
    Eigen::VectorXd b(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const double sc = (s.times[i] - mid) / half;
        double p = 1.0;
        for (Eigen::Index k = 0; k < cols; ++k) {
            X(static_cast<Eigen::Index>(i), k) = p;
            p *= sc;
        }
        b(static_cast<Eigen::Index>(i)) = s.values[i];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    const Eigen::VectorXd diag = qr.matrixQR().diagonal().head(cols).cwiseAbs();
    const double dmax = diag.maxCoeff();
    const double dmin = diag.minCoeff();
    if (!(dmax > 0.0) || dmin / dmax < 1e-13)
        throw ConditioningError("fit_polynomial: design matrix is numerically rank deficient");

    const Eigen::VectorXd c = qr.solve(b);
    trend.coeffs.assign(c.data(), c.data() + cols);
    return trend;
}

PolyTrend fit_polynomial(const MonthlySeries& s, int order) {
    return fit_polynomial(as_sampled(s), order);
}

SampledSeries detrend(const SampledSeries& s, const PolyTrend& trend) {
    if (s.times.size() != s.values.size())
        throw ParamError("detrend: times and values differ in length");
    SampledSeries out;
    out.times = s.times;
    out.values.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        out.values[i] = s.values[i] - trend.evaluate(s.times[i]);
    return out;
}

std::vector<double> evaluate_trend(const PolyTrend& trend, std::span<const double> times) {
    std::vector<double> out(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) out[i] = trend.evaluate(times[i]);
    return out;
}

}  // namespace periodica
