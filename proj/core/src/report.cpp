#include "periodica/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "periodica/errors.hpp"

namespace periodica {

using nlohmann::json;

namespace {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json trend_to_json_value(const PolyTrend& trend) {
    return json{{"order", trend.order},
                {"coeffs", trend.coeffs},
                {"fit_range", {trend.t_min, trend.t_max}}};
}

std::string table_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string pad(const std::string& s, std::size_t width) {
    return s + std::string(width > s.size() ? width - s.size() : 0, ' ');
}

std::string render_columns(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths;
    for (const auto& row : rows) {
        if (widths.size() < row.size()) widths.resize(row.size(), 0);
        for (std::size_t c = 0; c < row.size(); ++c)
            widths[c] = std::max(widths[c], row[c].size());
    }
    std::string out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            line += pad(row[c], widths[c]);
            if (c + 1 < row.size()) line += "  ";
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + "\n";
    }
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return buf;
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = 14695981039346656037ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= bytes[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    const std::string bytes = read_text_file(path);
    return fnv1a64(bytes.data(), bytes.size());
}

std::string hex_digest(std::uint64_t digest) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(digest));
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("error while reading file: " + path);
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write file: " + path);
    out << content;
    out.flush();
    if (!out) throw IoError("error while writing file: " + path);
}

std::string trend_json(const PolyTrend& trend) { return dump(trend_to_json_value(trend)); }

PolyTrend trend_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("trend JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("order") || !j.contains("coeffs") ||
        !j.contains("fit_range"))
        throw FormatError("trend JSON: expected keys order, coeffs, fit_range");
    PolyTrend trend;
    try {
        trend.order = j.at("order").get<int>();
        trend.coeffs = j.at("coeffs").get<std::vector<double>>();
        const auto range = j.at("fit_range").get<std::vector<double>>();
        if (range.size() != 2) throw FormatError("trend JSON: fit_range must have two entries");
        trend.t_min = range[0];
        trend.t_max = range[1];
    } catch (const json::exception& e) {
        throw FormatError(std::string("trend JSON: ") + e.what());
    }
    if (trend.coeffs.size() != static_cast<std::size_t>(trend.order) + 1)
        throw FormatError("trend JSON: coeffs length does not match order");
    return trend;
}

std::string model_json(const HarmonicModel& model, std::span<const PeakInfo> peaks) {
    json terms = json::array();
    const bool with_shares = peaks.size() == model.terms.size();
    for (std::size_t i = 0; i < model.terms.size(); ++i) {
        const auto& term = model.terms[i];
        json t{{"frequency", term.frequency}, {"period_months", term.period()},
               {"a", term.cos_coef},          {"b", term.sin_coef},
               {"amplitude", term.amplitude}, {"phase", term.phase}};
        if (with_shares) {
            t["variance_share_total"] = peaks[i].share_total;
            t["variance_share_selected"] = peaks[i].share_selected;
        }
        terms.push_back(std::move(t));
    }
    json j{{"terms", std::move(terms)}, {"fit_range", {model.t_min, model.t_max}}};
    if (model.attached_trend) j["trend"] = trend_to_json_value(*model.attached_trend);
    return dump(j);
}

std::string test_report_json(const TestReport& report) {
    return dump(json{{"test_name", report.test_name},
                     {"statistic", report.statistic},
                     {"dof", report.dof},
                     {"p_value", report.p_value}});
}

std::string scorecard_json(const ScoreCard& card, bool has_chi2) {
    json j{{"chi2", has_chi2 ? json(card.chi2) : json(nullptr)},
           {"chi2_dof", has_chi2 ? json(card.chi2_dof) : json(nullptr)},
           {"smape", card.smape},
           {"smape_percent", 100.0 * card.smape},
           {"mae", card.mae},
           {"rmse", card.rmse},
           {"n", card.n}};
    return dump(j);
}

std::string spectrum_json(const SpectralEstimate& est) {
    return dump(json{{"method", est.method},
                     {"n_effective", est.n_effective},
                     {"bin_width", est.bin_width},
                     {"variance_total", est.variance_total},
                     {"bins", est.size()},
                     {"invalid_freqs", est.invalid_freqs}});
}

std::string spectrum_csv(const SpectralEstimate& est) {
    double total = 0.0;
    for (double p : est.power) total += p;
    std::string out = "freq,period_months,power,variance_share\n";
    for (std::size_t i = 0; i < est.size(); ++i) {
        const double share = total > 0.0 ? est.power[i] / total : 0.0;
        out += format_double(est.freqs[i]) + "," + format_double(1.0 / est.freqs[i]) + "," +
               format_double(est.power[i]) + "," + format_double(share) + "\n";
    }
    return out;
}

std::string sampled_csv(const SampledSeries& s, YearMonth start,
                        const std::string& value_label) {
    std::string out = "date,t," + value_label + "\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto offset = static_cast<int>(std::llround(s.times[i]));
        out += start.plus_months(offset).str() + "," + format_double(s.times[i]) + "," +
               format_double(s.values[i]) + "\n";
    }
    return out;
}

std::string correlogram_csv(const AcfResult& acf) {
    const double band = 2.0 / std::sqrt(static_cast<double>(acf.n));
    std::string out = "lag,rho,lower,upper\n";
    for (std::size_t k = 0; k < acf.rho.size(); ++k) {
        out += std::to_string(k) + "," + format_double(acf.rho[k]) + "," +
               format_double(-band) + "," + format_double(band) + "\n";
    }
    return out;
}

std::string forecast_csv(const ForecastResult& fc, const MonthlySeries* actual) {
    std::string out = "date,actual,predicted,predicted_with_trend\n";
    for (std::size_t h = 0; h < fc.predicted.size(); ++h) {
        const YearMonth month = fc.predicted.month_at(h);
        std::string actual_cell;
        if (actual && !(month < actual->start) && !(actual->last_month() < month)) {
            const auto idx = static_cast<std::size_t>(months_between(actual->start, month));
            actual_cell = format_double(actual->values[idx]);
        }
        out += month.str() + "," + actual_cell + "," + format_double(fc.predicted.values[h]) +
               "," + format_double(fc.predicted_with_trend.values[h]) + "\n";
    }
    return out;
}

std::string scorecard_table(std::span<const std::pair<std::string, ScoreCard>> cards) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"measure"};
    for (const auto& [label, card] : cards) header.push_back(label);
    rows.push_back(header);

    auto add_row = [&rows, &cards](const std::string& name, auto getter) {
        std::vector<std::string> row{name};
        for (const auto& [label, card] : cards) row.push_back(getter(card));
        rows.push_back(std::move(row));
    };
    add_row("chi2", [](const ScoreCard& c) { return table_number(c.chi2); });
    add_row("chi2 dof", [](const ScoreCard& c) { return std::to_string(c.chi2_dof); });
    add_row("sMAPE", [](const ScoreCard& c) { return table_number(100.0 * c.smape) + "%"; });
    add_row("MAE", [](const ScoreCard& c) { return table_number(c.mae); });
    add_row("RMSE", [](const ScoreCard& c) { return table_number(c.rmse); });
    add_row("n", [](const ScoreCard& c) { return std::to_string(c.n); });
    return render_columns(rows);
}

std::string peaks_table(std::span<const PeakInfo> peaks, const HarmonicModel& model) {
    const bool with_amp = model.terms.size() == peaks.size();
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"rank", "freq (cycles/month)", "period (months)",
                                    "power", "share total", "share selected"};
    if (with_amp) header.push_back("amplitude");
    rows.push_back(std::move(header));
    for (std::size_t i = 0; i < peaks.size(); ++i) {
        const auto& p = peaks[i];
        std::vector<std::string> row{std::to_string(i + 1),
                                     table_number(p.frequency),
                                     table_number(1.0 / p.frequency),
                                     table_number(p.power),
                                     table_number(100.0 * p.share_total) + "%",
                                     table_number(100.0 * p.share_selected) + "%"};
        if (with_amp) row.push_back(table_number(model.terms[i].amplitude));
        rows.push_back(std::move(row));
    }
    return render_columns(rows);
}

}  // namespace periodica
