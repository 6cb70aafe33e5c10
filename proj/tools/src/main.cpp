// Command line front end. Subcommands share one option set; a JSON config
// file can supply any flag, with explicit flags taking precedence. All
// artifacts are staged in memory and written together so a failing run
// leaves no partial output directory.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "periodica/detrend.hpp"
#include "periodica/errors.hpp"
#include "periodica/harmonics.hpp"
#include "periodica/ingest.hpp"
#include "periodica/metrics.hpp"
#include "periodica/report.hpp"
#include "periodica/rng.hpp"
#include "periodica/spectral.hpp"
#include "periodica/stats.hpp"
#include "periodica/svg.hpp"

namespace {

using json = nlohmann::json;
using namespace periodica;

struct Options {
    std::string config_path;
    std::string input;
    std::string value_column;
    std::string cpi;
    std::string cpi_column;
    std::string base;
    std::string calendar_path;
    bool excise = false;
    std::string country;
    int order = -1;  // negative: resolve from country, falling back to 5
    std::string method = "classical";
    int segment = 0;  // zero: floor(n/2)
    double overlap = 0.5;
    std::string window = "hanning";
    int k = 5;
    double oversample = 4.0;
    double fmax = 0.5;
    std::string cutoff;
    int horizon = -1;
    int lags = 24;
    std::uint64_t seed = 1;
    std::string out = "out";
    std::string kind = "random-walk";
    int n = 786;
    double sigma = 1.0;
};

// One configurable flag: how to set it from JSON and how to echo it back.
struct Binding {
    CLI::Option* opt = nullptr;
    std::function<void(const json&)> apply;
    std::function<json()> echo;
};

using BindingMap = std::map<std::string, Binding>;

template <typename T>
void bind_key(BindingMap& m, const std::string& key, CLI::Option* opt, T* var) {
    m[key] = Binding{opt, [var](const json& v) { *var = v.get<T>(); },
                     [var]() { return json(*var); }};
}

// Applies config values to flags the user did not pass. Keys that belong to
// a different subcommand are ignored so one config file can drive several
// commands; keys no command knows are rejected.
void merge_config(const std::string& path, BindingMap& active,
                  const std::set<std::string>& known_keys) {
    json cfg;
    try {
        cfg = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw FormatError("config '" + path + "': " + e.what());
    }
    if (!cfg.is_object()) throw FormatError("config '" + path + "': expected a JSON object");
    for (const auto& [key, value] : cfg.items()) {
        if (!known_keys.count(key)) throw ParamError("config: unknown key '" + key + "'");
        auto it = active.find(key);
        if (it == active.end()) continue;
        if (it->second.opt && it->second.opt->count() > 0) continue;  // flag wins
        try {
            it->second.apply(value);
        } catch (const json::exception& e) {
            throw FormatError("config key '" + key + "': " + e.what());
        }
    }
}

// Staged artifacts, flushed in one pass with a manifest listing every file
// and a digest of every input. No timestamps: reruns must be byte-identical.
struct RunOutput {
    std::string command;
    json config = json::object();
    std::vector<std::string> input_paths;
    std::map<std::string, std::string> files;

    void add(const std::string& name, std::string bytes) { files[name] = std::move(bytes); }

    void flush(const std::string& dir) {
        json inputs = json::array();
        for (const auto& path : input_paths)
            inputs.push_back({{"path", path}, {"fnv1a64", hex_digest(fnv1a64_file(path))}});
        json outputs = json::array();
        for (const auto& [name, bytes] : files) outputs.push_back(name);
        outputs.push_back("manifest.json");
        json manifest = {{"command", command},
                         {"config", config},
                         {"inputs", inputs},
                         {"outputs", outputs}};
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
        for (const auto& [name, bytes] : files)
            write_text_file(dir + "/" + name, bytes);
        write_text_file(dir + "/manifest.json", manifest.dump(2) + "\n");
    }
};

MonthlySeries load_series(const std::string& path, const std::string& requested_column,
                          RunOutput& run) {
    std::string text = read_text_file(path);
    std::string column = requested_column;
    if (column.empty()) {
        auto columns = csv_value_columns(text);
        if (columns.empty()) throw FormatError("'" + path + "': no value columns in header");
        column = columns.front();
    }
    run.input_paths.push_back(path);
    return parse_csv(text, column);
}

ShockCalendar resolve_calendar(const Options& o, RunOutput& run) {
    if (!o.calendar_path.empty() && o.excise)
        throw ParamError("--calendar and --excise are mutually exclusive");
    if (!o.calendar_path.empty()) {
        run.input_paths.push_back(o.calendar_path);
        return load_calendar_file(o.calendar_path);
    }
    if (o.excise) {
        if (o.country.empty())
            throw ParamError("--excise needs --country to pick the built-in calendar");
        return builtin_calendar(parse_country(o.country));
    }
    return {};
}

int resolve_order(const Options& o) {
    int order = o.order;
    if (order < 0) order = o.country.empty() ? 5 : default_detrend_order(parse_country(o.country));
    if (order > 12) throw ParamError("--order must be at most 12");
    return order;
}

PipelineOptions resolve_pipeline(const Options& o) {
    PipelineOptions p;
    p.order = resolve_order(o);
    p.method = parse_method(o.method);
    if (o.k < 0 || o.k > 64) throw ParamError("--k must lie in [0, 64]");
    p.k = o.k;
    p.welch.segment = static_cast<std::size_t>(o.segment < 0 ? 0 : o.segment);
    p.welch.overlap = o.overlap;
    p.welch.window = parse_window(o.window);
    p.lomb_oversample = o.oversample;
    p.lomb_fmax = o.fmax;
    return p;
}

double year_of(YearMonth start, double offset_months) {
    return (static_cast<double>(start.index()) + offset_months) / 12.0;
}

std::vector<double> year_axis(const MonthlySeries& s) {
    std::vector<double> x(s.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = year_of(s.start, static_cast<double>(i));
    return x;
}

std::vector<double> year_axis(YearMonth start, std::span<const double> times) {
    std::vector<double> x(times.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = year_of(start, times[i]);
    return x;
}

SvgSeries line(std::string label, std::vector<double> x, std::vector<double> y,
               std::string color, bool dashed = false) {
    SvgSeries s;
    s.label = std::move(label);
    s.x = std::move(x);
    s.y = std::move(y);
    s.color = std::move(color);
    s.dashed = dashed;
    return s;
}

std::string spectrum_svg(const SpectralEstimate& est, const std::string& title) {
    SvgChart chart;
    chart.title = title;
    chart.x_label = "frequency (cycles per month)";
    chart.y_label = "power";
    std::vector<double> f(est.freqs.begin(), est.freqs.end());
    chart.series.push_back(line("power", f, est.power, "#1f77b4"));
    return render_svg(chart);
}

// Chi-squared needs nonzero expected values; when the comparison target
// crosses zero the statistic is undefined and the scorecard reports null.
ScoreCard score_optional_chi2(std::span<const double> actual, std::span<const double> expected,
                              bool& has_chi2) {
    has_chi2 = true;
    try {
        return score(actual, expected);
    } catch (const DivisionByNearZeroError&) {
        has_chi2 = false;
        ScoreCard card;
        card.smape = smape(actual, expected);
        card.mae = mae(actual, expected);
        card.rmse = rmse(actual, expected);
        card.n = actual.size();
        return card;
    }
}

std::string two_column_csv(const SampledSeries& s, YearMonth start, const std::string& left_label,
                           std::span<const double> left, const std::string& right_label,
                           std::span<const double> right) {
    std::string out = "date,t," + left_label + "," + right_label + "\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        long offset = std::lround(s.times[i]);
        out += start.plus_months(static_cast<int>(offset)).str();
        out += ',' + format_double(s.times[i]);
        out += ',' + format_double(left[i]);
        out += ',' + format_double(right[i]);
        out += '\n';
    }
    return out;
}

std::string tests_table(std::span<const TestReport> tests) {
    std::string out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-20s %14s %5s %12s\n", "test", "statistic", "dof", "p-value");
    out += buf;
    for (const auto& t : tests) {
        std::snprintf(buf, sizeof buf, "%-20s %14.6g %5d %12.6g\n", t.test_name.c_str(),
                      t.statistic, t.dof, t.p_value);
        out += buf;
    }
    return out;
}

json tests_json(std::span<const TestReport> tests) {
    json out = json::object();
    for (const auto& t : tests)
        out[t.test_name] = {{"test_name", t.test_name},
                            {"statistic", t.statistic},
                            {"dof", t.dof},
                            {"p_value", t.p_value}};
    return out;
}

int cmd_analyze(const Options& o, RunOutput& run) {
    if (o.input.empty()) throw ParamError("--input is required");
    MonthlySeries raw = load_series(o.input, o.value_column, run);
    MonthlySeries series = raw;
    bool deflated = false;
    if (!o.cpi.empty()) {
        MonthlySeries cpi = load_series(o.cpi, o.cpi_column, run);
        YearMonth base = o.base.empty() ? raw.start : YearMonth::parse(o.base);
        series = deflate(raw, cpi, base);
        deflated = true;
    }
    ShockCalendar calendar = resolve_calendar(o, run);
    SampledSeries sampled = excise(series, calendar);

    PipelineOptions popt = resolve_pipeline(o);
    bool gappy = sampled.size() != series.size();
    if (gappy && popt.method != Method::lomb) {
        std::printf("note: excision left gaps; switching to the Lomb-Scargle estimator\n");
        popt.method = Method::lomb;
    }
    PipelineFit fit = fit_pipeline(sampled, popt);
    std::vector<double> recon = reconstruct(fit.model, fit.residual.times);

    bool has_chi2 = false;
    ScoreCard card = score_optional_chi2(fit.residual.values, recon, has_chi2);

    run.add(deflated ? "deflated.csv" : "series.csv", serialize_csv(series));
    run.add("trend.json", trend_json(fit.trend));
    run.add("detrended.csv", sampled_csv(fit.residual, series.start, "detrended"));
    run.add("spectrum.csv", spectrum_csv(fit.spectrum));
    run.add("spectrum.json", spectrum_json(fit.spectrum));
    run.add("peaks.txt", peaks_table(fit.peaks, fit.model));
    run.add("model.json", model_json(fit.model, fit.peaks));
    run.add("reconstruction.csv", two_column_csv(fit.residual, series.start, "detrended",
                                                 fit.residual.values, "reconstruction", recon));
    run.add("scorecard.json", scorecard_json(card, has_chi2));

    {
        SvgChart chart;
        chart.title = series.label.empty() ? "series and fitted trend" : series.label;
        chart.x_label = "year";
        chart.y_label = "level";
        std::vector<double> xs = year_axis(series.start, sampled.times);
        chart.series.push_back(line("series", xs, sampled.values, "#1f77b4"));
        chart.series.push_back(
            line("trend", xs, evaluate_trend(fit.trend, sampled.times), "#d62728", true));
        run.add("series_trend.svg", render_svg(chart));
    }
    run.add("periodogram.svg",
            spectrum_svg(fit.spectrum, "power spectrum (" + fit.spectrum.method + ")"));
    {
        SvgChart chart;
        chart.title = "detrended series and harmonic reconstruction";
        chart.x_label = "year";
        chart.y_label = "deviation from trend";
        std::vector<double> xs = year_axis(series.start, fit.residual.times);
        chart.series.push_back(line("detrended", xs, fit.residual.values, "#1f77b4"));
        chart.series.push_back(line("reconstruction", xs, recon, "#d62728", true));
        run.add("reconstruction.svg", render_svg(chart));
    }

    std::printf("method: %s  samples: %zu  bins: %zu\n", fit.spectrum.method.c_str(),
                sampled.size(), fit.spectrum.size());
    std::fputs(peaks_table(fit.peaks, fit.model).c_str(), stdout);
    std::vector<std::pair<std::string, ScoreCard>> cards{{"reconstruction", card}};
    std::fputs(scorecard_table(cards).c_str(), stdout);
    return 0;
}

int cmd_rwm_test(const Options& o, RunOutput& run) {
    if (o.input.empty()) throw ParamError("--input is required");
    MonthlySeries raw = load_series(o.input, o.value_column, run);
    MonthlySeries series = raw;
    if (!o.cpi.empty()) {
        MonthlySeries cpi = load_series(o.cpi, o.cpi_column, run);
        YearMonth base = o.base.empty() ? raw.start : YearMonth::parse(o.base);
        series = deflate(raw, cpi, base);
    }
    if (o.lags < 1) throw ParamError("--lags must be positive");

    MonthlySeries diffs = first_differences(series);
    if (static_cast<std::size_t>(o.lags) >= diffs.size())
        throw ParamError("--lags must be smaller than the differenced length");
    AcfResult ac = acf(std::span<const double>(diffs.values), o.lags);
    std::vector<TestReport> tests{box_pierce(ac, o.lags), ljung_box(ac, o.lags),
                                  ks_test_normal(diffs.values), jarque_bera(diffs.values)};
    SpectralEstimate diff_spectrum = scaled_periodogram(diffs.values);

    // A same-length simulated walk, differenced the same way, shows what the
    // statistics look like when the null model really holds.
    double mean = 0.0;
    for (double v : diffs.values) mean += v;
    mean /= static_cast<double>(diffs.size());
    double var = 0.0;
    for (double v : diffs.values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(diffs.size());
    MonthlySeries sim = simulate_random_walk(series.size(), std::sqrt(var), o.seed);
    sim.start = series.start;
    MonthlySeries sim_diffs = first_differences(sim);
    AcfResult sim_ac = acf(std::span<const double>(sim_diffs.values), o.lags);
    SpectralEstimate sim_spectrum = scaled_periodogram(sim_diffs.values);

    run.add("differences.csv", serialize_csv(diffs));
    run.add("correlogram.csv", correlogram_csv(ac));
    run.add("diff_periodogram.csv", spectrum_csv(diff_spectrum));
    run.add("tests.json", tests_json(tests).dump(2) + "\n");
    run.add("sim_series.csv", serialize_csv(sim));
    run.add("sim_correlogram.csv", correlogram_csv(sim_ac));
    run.add("sim_periodogram.csv", spectrum_csv(sim_spectrum));

    {
        SvgChart chart;
        chart.title = "first differences";
        chart.x_label = "year";
        chart.y_label = "monthly change";
        chart.series.push_back(line("diff", year_axis(diffs), diffs.values, "#1f77b4"));
        run.add("differences.svg", render_svg(chart));
    }
    {
        SvgChart chart;
        chart.title = "correlogram of first differences";
        chart.x_label = "lag (months)";
        chart.y_label = "autocorrelation";
        std::vector<double> lags_x, rho;
        for (int k = 1; k <= ac.max_lag(); ++k) {
            lags_x.push_back(static_cast<double>(k));
            rho.push_back(ac.rho[static_cast<std::size_t>(k)]);
        }
        SvgSeries stems = line("acf", lags_x, rho, "#1f77b4");
        stems.stems = true;
        chart.series.push_back(stems);
        double band = 2.0 / std::sqrt(static_cast<double>(ac.n));
        chart.h_markers = {band, -band};
        run.add("correlogram.svg", render_svg(chart));
    }
    run.add("diff_periodogram.svg", spectrum_svg(diff_spectrum, "periodogram of first differences"));
    {
        SvgChart chart;
        chart.title = "observed series vs simulated random walk";
        chart.x_label = "year";
        chart.y_label = "level";
        chart.series.push_back(line("observed", year_axis(series), series.values, "#1f77b4"));
        chart.series.push_back(line("simulated walk", year_axis(sim), sim.values, "#d62728", true));
        run.add("rwm_comparison.svg", render_svg(chart));
    }

    run.config["rng"] = CounterRng::kName;
    std::fputs(tests_table(tests).c_str(), stdout);
    int rejections = 0;
    for (const auto& t : tests)
        if (t.p_value < 0.05) ++rejections;
    std::printf("tests rejecting the random-walk null at the 5%% level: %d of %zu\n", rejections,
                tests.size());
    return 0;
}

int cmd_forecast(const Options& o, RunOutput& run) {
    if (o.input.empty()) throw ParamError("--input is required");
    if (o.cutoff.empty()) throw ParamError("--cutoff is required");
    MonthlySeries raw = load_series(o.input, o.value_column, run);

    ForecastConfig cfg;
    cfg.pipeline = resolve_pipeline(o);
    cfg.calendar = resolve_calendar(o, run);
    cfg.cutoff = YearMonth::parse(o.cutoff);
    cfg.horizon = o.horizon;

    ForecastResult fc;
    std::optional<MonthlySeries> actual;
    if (!o.cpi.empty()) {
        MonthlySeries cpi = load_series(o.cpi, o.cpi_column, run);
        YearMonth base = o.base.empty() ? raw.start : YearMonth::parse(o.base);
        fc = forecast(raw, cpi, base, cfg);
        try {
            actual = deflate(raw, cpi, base);
        } catch (const CoverageError&) {
            std::printf("note: CPI does not cover the full range; scoring skipped\n");
        }
    } else {
        fc = forecast(raw, cfg);
        actual = raw;
    }

    run.add("model.json", model_json(fc.model, fc.peaks));
    run.add("trend.json", trend_json(*fc.model.attached_trend));
    run.add("spectrum.csv", spectrum_csv(fc.spectrum));
    run.add("spectrum.json", spectrum_json(fc.spectrum));
    run.add("peaks.txt", peaks_table(fc.peaks, fc.model));
    run.add("fitted.csv", serialize_csv(fc.fitted));
    run.add("forecast.csv", forecast_csv(fc, actual ? &*actual : nullptr));

    // Score the level forecast over whatever post-cutoff months really exist.
    if (actual) {
        int offset = months_between(actual->start, fc.predicted_with_trend.start);
        std::size_t overlap_n = 0;
        if (offset >= 0 && static_cast<std::size_t>(offset) < actual->size())
            overlap_n = std::min(fc.predicted_with_trend.size(),
                                 actual->size() - static_cast<std::size_t>(offset));
        if (overlap_n > 0) {
            std::span<const double> a(actual->values.data() + offset, overlap_n);
            std::span<const double> p(fc.predicted_with_trend.values.data(), overlap_n);
            bool has_chi2 = false;
            ScoreCard card = score_optional_chi2(a, p, has_chi2);
            run.add("scorecard.json", scorecard_json(card, has_chi2));
            std::vector<std::pair<std::string, ScoreCard>> cards{{"forecast", card}};
            std::fputs(scorecard_table(cards).c_str(), stdout);
        }
    }

    {
        SvgChart chart;
        chart.title = "forecast from " + fc.cutoff.str();
        chart.x_label = "year";
        chart.y_label = "level";
        if (actual)
            chart.series.push_back(line("actual", year_axis(*actual), actual->values, "#1f77b4"));
        chart.series.push_back(
            line("fitted", year_axis(fc.fitted), fc.fitted.values, "#2ca02c", true));
        chart.series.push_back(line("forecast", year_axis(fc.predicted_with_trend),
                                    fc.predicted_with_trend.values, "#d62728"));
        chart.v_markers = {year_of(fc.cutoff, 0.0)};
        run.add("forecast.svg", render_svg(chart));
    }

    std::printf("cutoff: %s  horizon: %zu months  method: %s\n", fc.cutoff.str().c_str(),
                fc.predicted.size(), fc.spectrum.method.c_str());
    std::fputs(peaks_table(fc.peaks, fc.model).c_str(), stdout);
    return 0;
}

int cmd_simulate(const Options& o, RunOutput& run) {
    if (o.n < 1) throw ParamError("--n must be positive");
    MonthlySeries series;
    if (o.kind == "random-walk")
        series = simulate_random_walk(static_cast<std::size_t>(o.n), o.sigma, o.seed);
    else if (o.kind == "white-noise")
        series = simulate_white_noise(static_cast<std::size_t>(o.n), o.sigma, o.seed);
    else
        throw ParamError("--kind must be 'random-walk' or 'white-noise'");

    run.add("series.csv", serialize_csv(series));
    SvgChart chart;
    chart.title = series.label;
    chart.x_label = "year";
    chart.y_label = "level";
    chart.series.push_back(line(o.kind, year_axis(series), series.values, "#1f77b4"));
    run.add("series.svg", render_svg(chart));

    run.config["rng"] = CounterRng::kName;
    std::printf("simulated %s: n=%d sigma=%s seed=%llu\n", o.kind.c_str(), o.n,
                format_double(o.sigma).c_str(), static_cast<unsigned long long>(o.seed));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral analysis of monthly index series"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "0.1.0");

    Options o;
    std::map<std::string, BindingMap> bindings;
    std::set<std::string> known_keys;

    auto add_common = [&](CLI::App* cmd, bool with_input, bool with_pipeline) {
        BindingMap& m = bindings[cmd->get_name()];
        cmd->add_option("--config", o.config_path, "JSON config file; flags override its values");
        if (with_input) {
            bind_key(m, "input", cmd->add_option("--input", o.input, "input CSV (date,value rows)"),
                 &o.input);
            bind_key(m, "value-column",
                 cmd->add_option("--value-column", o.value_column,
                                 "value column name; default: first non-date column"),
                 &o.value_column);
            bind_key(m, "cpi", cmd->add_option("--cpi", o.cpi, "CPI CSV used to deflate the input"),
                 &o.cpi);
            bind_key(m, "cpi-column",
                 cmd->add_option("--cpi-column", o.cpi_column, "CPI value column name"),
                 &o.cpi_column);
            bind_key(m, "base",
                 cmd->add_option("--base", o.base,
                                 "base month YYYY-MM for the deflator; default: series start"),
                 &o.base);
        }
        if (with_pipeline) {
            bind_key(m, "calendar",
                 cmd->add_option("--calendar", o.calendar_path, "shock calendar JSON to excise"),
                 &o.calendar_path);
            bind_key(m, "excise",
                 cmd->add_flag("--excise", o.excise, "excise the built-in shock calendar"),
                 &o.excise);
            bind_key(m, "country",
                 cmd->add_option("--country", o.country,
                                 "us, japan or germany; sets calendar and default order"),
                 &o.country);
            bind_key(m, "order",
                 cmd->add_option("--order", o.order, "polynomial trend order (japan default 6, else 5)"),
                 &o.order);
            bind_key(m, "method",
                 cmd->add_option("--method", o.method, "classical, welch or lomb"), &o.method);
            bind_key(m, "segment",
                 cmd->add_option("--segment", o.segment, "welch segment length; 0 means n/2"),
                 &o.segment);
            bind_key(m, "overlap",
                 cmd->add_option("--overlap", o.overlap, "welch segment overlap in [0, 0.9]"),
                 &o.overlap);
            bind_key(m, "window", cmd->add_option("--window", o.window, "rect or hanning"), &o.window);
            bind_key(m, "k", cmd->add_option("--k", o.k, "number of harmonics kept (0..64)"), &o.k);
            bind_key(m, "oversample",
                 cmd->add_option("--oversample", o.oversample, "lomb grid oversampling factor"),
                 &o.oversample);
            bind_key(m, "fmax",
                 cmd->add_option("--fmax", o.fmax, "lomb grid upper frequency, at most 0.5"),
                 &o.fmax);
        }
        bind_key(m, "seed", cmd->add_option("--seed", o.seed, "random seed"), &o.seed);
        bind_key(m, "out", cmd->add_option("--out", o.out, "output directory"), &o.out);
    };

    CLI::App* analyze = app.add_subcommand("analyze", "deflate, detrend, estimate the spectrum");
    add_common(analyze, true, true);

    CLI::App* rwm = app.add_subcommand("rwm-test", "test first differences for white noise");
    add_common(rwm, true, false);
    bind_key(bindings["rwm-test"], "lags",
         rwm->add_option("--lags", o.lags, "portmanteau lag count"), &o.lags);

    CLI::App* fc = app.add_subcommand("forecast", "fit before a cutoff, project past it");
    add_common(fc, true, true);
    bind_key(bindings["forecast"], "cutoff",
         fc->add_option("--cutoff", o.cutoff, "last month YYYY-MM visible to the fit"), &o.cutoff);
    bind_key(bindings["forecast"], "horizon",
         fc->add_option("--horizon", o.horizon, "months past the cutoff; -1 means to input end"),
         &o.horizon);

    CLI::App* sim = app.add_subcommand("simulate", "generate a seeded benchmark series");
    add_common(sim, false, false);
    bind_key(bindings["simulate"], "kind",
         sim->add_option("--kind", o.kind, "random-walk or white-noise"), &o.kind);
    bind_key(bindings["simulate"], "n", sim->add_option("--n", o.n, "series length"), &o.n);
    bind_key(bindings["simulate"], "sigma", sim->add_option("--sigma", o.sigma, "innovation sd"),
         &o.sigma);

    for (const auto& [cmd, m] : bindings)
        for (const auto& [key, b] : m) known_keys.insert(key);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 4;
    }

    CLI::App* active = app.get_subcommands().front();
    const std::string name = active->get_name();

    try {
        if (!o.config_path.empty()) merge_config(o.config_path, bindings[name], known_keys);

        RunOutput run;
        run.command = name;
        for (const auto& [key, b] : bindings[name]) run.config[key] = b.echo();

        int rc = 0;
        if (name == "analyze") rc = cmd_analyze(o, run);
        else if (name == "rwm-test") rc = cmd_rwm_test(o, run);
        else if (name == "forecast") rc = cmd_forecast(o, run);
        else rc = cmd_simulate(o, run);

        run.flush(o.out);
        std::printf("wrote %zu files to %s\n", run.files.size() + 1, o.out.c_str());
        return rc;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.exit_code();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
