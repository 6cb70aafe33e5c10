#include "periodica/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "periodica/errors.hpp"

namespace periodica {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sum_squares(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

std::vector<std::complex<double>> fft_radix2(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> a(x.begin(), x.end());
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    std::vector<std::complex<double>> tw(n / 2);
    for (std::size_t m = 0; m < n / 2; ++m)
        tw[m] = std::polar(1.0, -2.0 * kPi * static_cast<double>(m) / static_cast<double>(n));
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = a[i + k];
                const auto v = a[i + k + len / 2] * tw[k * step];
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& c : a) c *= scale;
    return a;
}

SpectralEstimate classical_impl(std::span<const double> values, bool scaled) {
    const std::size_t n = values.size();
    if (n < 4) throw TooShortError("periodogram: need at least 4 observations");
    std::vector<double> centered(values.begin(), values.end());
    const double mean = mean_of(centered);
    for (auto& v : centered) v -= mean;

    const auto d = dft(centered);
    const std::size_t half = n / 2;

    SpectralEstimate est;
    est.method = "classical";
    est.n_effective = n;
    est.bin_width = 1.0 / static_cast<double>(n);
    est.variance_total = sum_squares(centered) / static_cast<double>(n);
    est.freqs.resize(half);
    est.power.resize(half);
    const double scale = scaled ? 4.0 / static_cast<double>(n) : 1.0;
    for (std::size_t j = 1; j <= half; ++j) {
        est.freqs[j - 1] = static_cast<double>(j) / static_cast<double>(n);
        est.power[j - 1] = scale * std::norm(d[j]);
    }
    return est;
}

}  // namespace

Method parse_method(std::string_view name) {
    if (name == "classical") return Method::classical;
    if (name == "welch") return Method::welch;
    if (name == "lomb" || name == "lomb_scargle" || name == "lomb-scargle") return Method::lomb;
    throw ParamError("unknown method '" + std::string(name) +
                     "' (expected classical, welch, or lomb)");
}

const char* method_name(Method m) noexcept {
    switch (m) {
        case Method::classical: return "classical";
        case Method::welch: return "welch";
        case Method::lomb: return "lomb";
    }
    return "classical";
}

Window parse_window(std::string_view name) {
    if (name == "rect" || name == "rectangular") return Window::rect;
    if (name == "hanning") return Window::hanning;
    throw ParamError("unknown window '" + std::string(name) + "' (expected rect or hanning)");
}

const char* window_name(Window w) noexcept {
    return w == Window::rect ? "rect" : "hanning";
}

std::vector<double> window_weights(Window w, std::size_t length) {
    if (length == 0) throw ParamError("window_weights: length must be positive");
    std::vector<double> out(length, 1.0);
    if (w == Window::hanning && length > 1) {
        for (std::size_t t = 0; t < length; ++t)
            out[t] = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(t) /
                                           static_cast<double>(length - 1)));
    }
    return out;
}

std::vector<std::complex<double>> dft(std::span<const double> x) {
    if (x.empty()) throw EmptySeriesError("dft: input is empty");
    if (x.size() < 2) throw TooShortError("dft: need at least 2 observations");
    if (is_power_of_two(x.size())) return fft_radix2(x);
    return dft_direct(x);
}

std::vector<std::complex<double>> dft_direct(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n == 0) throw EmptySeriesError("dft: input is empty");
    if (n < 2) throw TooShortError("dft: need at least 2 observations");
    std::vector<std::complex<double>> tw(n);
    for (std::size_t m = 0; m < n; ++m)
        tw[m] = std::polar(1.0, -2.0 * kPi * static_cast<double>(m) / static_cast<double>(n));
    std::vector<std::complex<double>> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t t = 0; t < n; ++t) acc += x[t] * tw[(j * t) % n];
        out[j] = acc;
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& c : out) c *= scale;
    return out;
}

SpectralEstimate periodogram(std::span<const double> values) {
    return classical_impl(values, false);
}

SpectralEstimate scaled_periodogram(std::span<const double> values) {
    return classical_impl(values, true);
}

ParsevalReport parseval_check(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 4) throw TooShortError("parseval_check: need at least 4 observations");
    std::vector<double> centered(values.begin(), values.end());
    const double mean = mean_of(centered);
    for (auto& v : centered) v -= mean;

    ParsevalReport rep;
    rep.variance = sum_squares(centered) / static_cast<double>(n);
    if (rep.variance == 0.0) throw DegenerateError("parseval_check: series has zero variance");

    const auto d = dft(centered);
    const std::size_t half = n / 2;
    double sum = 0.0;
    for (std::size_t j = 1; j <= half; ++j) {
        const double p = std::norm(d[j]);
        if (n % 2 == 0 && j == half)
            sum += p / static_cast<double>(n);  // Nyquist contributes a^2, not A^2/2
        else
            sum += 2.0 * p / static_cast<double>(n);
    }
    rep.spectral_sum = sum;
    rep.relative_gap = std::abs(rep.variance - rep.spectral_sum) / rep.variance;
    return rep;
}

SpectralEstimate welch(std::span<const double> values, const WelchOptions& opt) {
    const std::size_t n = values.size();
    if (n < 4) throw TooShortError("welch: need at least 4 observations");
    const std::size_t L = opt.segment == 0 ? n / 2 : opt.segment;
    if (L < 4) throw ParamError("welch: segment length must be at least 4");
    if (L > n) throw ParamError("welch: no full segment fits the series");
    if (!(opt.overlap >= 0.0 && opt.overlap <= 0.9))
        throw ParamError("welch: overlap must lie in [0, 0.9]");

    const std::size_t stride = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(static_cast<double>(L) * (1.0 - opt.overlap))));
    const auto w = window_weights(opt.window, L);
    double wpow = 0.0;
    for (double x : w) wpow += x * x;
    wpow /= static_cast<double>(L);
    if (!(wpow > 0.0)) throw DegenerateError("welch: window power is zero");

    const std::size_t half = L / 2;
    std::vector<double> acc(half, 0.0);
    std::vector<double> seg(L);
    std::size_t segments = 0;
    for (std::size_t start = 0; start + L <= n; start += stride) {
        double mean = 0.0;
        for (std::size_t t = 0; t < L; ++t) mean += values[start + t];
        mean /= static_cast<double>(L);
        for (std::size_t t = 0; t < L; ++t) seg[t] = (values[start + t] - mean) * w[t];
        const auto d = dft(seg);
        for (std::size_t j = 1; j <= half; ++j) acc[j - 1] += std::norm(d[j]) / wpow;
        ++segments;
    }

    std::vector<double> centered(values.begin(), values.end());
    const double gmean = mean_of(centered);
    for (auto& v : centered) v -= gmean;

    SpectralEstimate est;
    est.method = "welch";
    est.n_effective = L;
    est.bin_width = 1.0 / static_cast<double>(L);
    est.variance_total = sum_squares(centered) / static_cast<double>(n);
    est.freqs.resize(half);
    est.power.resize(half);
    for (std::size_t j = 1; j <= half; ++j) {
        est.freqs[j - 1] = static_cast<double>(j) / static_cast<double>(L);
        est.power[j - 1] = acc[j - 1] / static_cast<double>(segments);
    }
    return est;
}

std::vector<double> default_lomb_grid(const SampledSeries& s, double oversample, double fmax) {
    if (s.size() < 2) throw TooShortError("default_lomb_grid: need at least 2 samples");
    if (!(oversample >= 1.0)) throw ParamError("default_lomb_grid: oversample must be >= 1");
    if (!(fmax > 0.0) || fmax > 0.5)
        throw ParamError("default_lomb_grid: fmax must lie in (0, 0.5]");
    const double span = s.span();
    if (!(span > 0.0)) throw ParamError("default_lomb_grid: time span is zero");

    const double step = 1.0 / (oversample * span);
    const auto kmax = static_cast<std::size_t>(std::floor(fmax / step + 1e-9));
    if (kmax == 0) throw ParamError("default_lomb_grid: fmax is below the grid step");
    std::vector<double> freqs(kmax);
    for (std::size_t k = 1; k <= kmax; ++k) freqs[k - 1] = static_cast<double>(k) * step;
    return freqs;
}

SpectralEstimate lomb_scargle(const SampledSeries& s, std::span<const double> freqs,
                              LombNormalization /*norm*/) {
    const std::size_t n = s.size();
    if (s.times.size() != s.values.size())
        throw ParamError("lomb_scargle: times and values differ in length");
    if (n < 4) throw TooShortError("lomb_scargle: need at least 4 samples");
    for (std::size_t i = 1; i < n; ++i)
        if (!(s.times[i] > s.times[i - 1]))
            throw ParamError("lomb_scargle: times must be strictly increasing");
    if (freqs.empty()) throw ParamError("lomb_scargle: frequency grid is empty");
    for (double f : freqs)
        if (!(f > 0.0) || f > 0.5 + 1e-12)
            throw ParamError("lomb_scargle: frequencies must lie in (0, 0.5]");

    const double mean = mean_of(s.values);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = s.values[i] - mean;

    SpectralEstimate est;
    est.method = "lomb_scargle";
    est.n_effective = n;
    est.bin_width = 1.0 / s.span();
    est.variance_total = sum_squares(y) / static_cast<double>(n);
    est.freqs.reserve(freqs.size());
    est.power.reserve(freqs.size());

    const double tol = static_cast<double>(n) * 1e-12;
    // One sin/cos pair per sample and frequency: the 2wt terms come from the
    // double-angle identities and the tau shift is applied as a rotation.
    std::vector<double> sin_wt(n), cos_wt(n);
    for (double f : freqs) {
        const double omega = 2.0 * kPi * f;
        double sin2 = 0.0, cos2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double s1 = std::sin(omega * s.times[i]);
            const double c1 = std::cos(omega * s.times[i]);
            sin_wt[i] = s1;
            cos_wt[i] = c1;
            sin2 += 2.0 * s1 * c1;
            cos2 += c1 * c1 - s1 * s1;
        }
        const double tau = std::atan2(sin2, cos2) / (2.0 * omega);
        const double ct = std::cos(omega * tau);
        const double st = std::sin(omega * tau);

        double c = 0.0, sv = 0.0, cc = 0.0, ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double cp = cos_wt[i] * ct + sin_wt[i] * st;
            const double sp = sin_wt[i] * ct - cos_wt[i] * st;
            c += y[i] * cp;
            sv += y[i] * sp;
            cc += cp * cp;
            ss += sp * sp;
        }
        if (cc < tol || ss < tol) {
            est.invalid_freqs.push_back(f);
            continue;
        }
        est.freqs.push_back(f);
        est.power.push_back(0.5 * (c * c / cc + sv * sv / ss));
    }
    if (est.freqs.empty())
        throw DegenerateError("lomb_scargle: every grid frequency was degenerate");
    return est;
}

SpectralEstimate lomb_scargle(const SampledSeries& s, LombNormalization norm) {
    const auto grid = default_lomb_grid(s);
    return lomb_scargle(s, grid, norm);
}

}  // namespace periodica
