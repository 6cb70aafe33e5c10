#include "periodica/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace periodica {

YearMonth YearMonth::from_index(int idx) {
    YearMonth ym;
    // floor division so negative indices stay calendar-consistent
    int y = idx >= 0 ? idx / 12 : -((-idx + 11) / 12);
    ym.year = y;
    ym.month = idx - y * 12 + 1;
    return ym;
}

YearMonth YearMonth::parse(std::string_view text) {
    // "YYYY-MM" or "YYYY:MM"
    auto fail = [&] {
        throw FormatError("cannot parse year-month '" + std::string(text) +
                          "' (expected YYYY-MM or YYYY:MM)");
    };
    std::size_t sep = text.find_first_of("-:");
    if (sep == std::string_view::npos || sep == 0 || sep + 1 >= text.size()) fail();
    int year = 0, month = 0;
    auto [py, ey] = std::from_chars(text.data(), text.data() + sep, year);
    if (ey != std::errc() || py != text.data() + sep) fail();
    const char* mbeg = text.data() + sep + 1;
    const char* mend = text.data() + text.size();
    auto [pm, em] = std::from_chars(mbeg, mend, month);
    if (em != std::errc() || pm != mend) fail();
    if (month < 1 || month > 12) fail();
    return YearMonth{year, month};
}

std::string YearMonth::str() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
    return buf;
}

Country parse_country(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "us" || lower == "usa" || lower == "united states") return Country::US;
    if (lower == "japan" || lower == "jp") return Country::Japan;
    if (lower == "germany" || lower == "de") return Country::Germany;
    throw UnknownCountryError("unknown country '" + std::string(name) +
                              "' (expected US, Japan, or Germany)");
}

std::string country_name(Country c) {
    switch (c) {
        case Country::US: return "US";
        case Country::Japan: return "Japan";
        case Country::Germany: return "Germany";
    }
    return "?";
}

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
            cells.push_back(trim(std::string_view(line).substr(pos)));
            break;
        }
        cells.push_back(trim(std::string_view(line).substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return cells;
}

double parse_value_cell(const std::string& cell, std::size_t row) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || p != cell.data() + cell.size())
        throw FormatError("row " + std::to_string(row) + ": cannot parse value '" + cell + "'");
    if (!std::isfinite(v))
        throw FormatError("row " + std::to_string(row) + ": non-finite value '" + cell + "'");
    return v;
}

}  // namespace

MonthlySeries parse_csv(std::istream& in, const std::string& value_column) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty CSV: missing header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_row(line);
    if (header.size() < 2) throw FormatError("header must contain a date column and at least one value column");

    std::size_t value_idx = header.size();
    for (std::size_t i = 1; i < header.size(); ++i)
        if (header[i] == value_column) value_idx = i;
    if (value_idx == header.size())
        throw FormatError("value column '" + value_column + "' not found in header");

    std::map<int, double> rows;  // month index -> value, sorted by date
    std::size_t row_no = 1;
    while (std::getline(in, line)) {
        ++row_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto cells = split_row(line);
        if (cells.size() != header.size())
            throw FormatError("row " + std::to_string(row_no) + ": expected " +
                              std::to_string(header.size()) + " cells, got " +
                              std::to_string(cells.size()));
        YearMonth ym;
        try {
            ym = YearMonth::parse(cells[0]);
        } catch (const FormatError& e) {
            throw FormatError("row " + std::to_string(row_no) + ": " + e.what());
        }
        const double v = parse_value_cell(cells[value_idx], row_no);
        if (!rows.emplace(ym.index(), v).second)
            throw FormatError("row " + std::to_string(row_no) + ": duplicate month " + ym.str());
    }
    if (rows.empty()) throw FormatError("CSV contains no data rows");

    MonthlySeries out;
    out.start = YearMonth::from_index(rows.begin()->first);
    out.label = value_column;
    out.values.reserve(rows.size());
    int expected = rows.begin()->first;
    for (const auto& [idx, v] : rows) {
        if (idx != expected)
            throw GapError("missing month " + YearMonth::from_index(expected).str() +
                           " (next present month is " + YearMonth::from_index(idx).str() + ")");
        out.values.push_back(v);
        ++expected;
    }
    return out;
}

MonthlySeries parse_csv(const std::string& text, const std::string& value_column) {
    std::istringstream in(text);
    return parse_csv(in, value_column);
}

std::string serialize_csv(const MonthlySeries& series) {
    std::string label = series.label;
    if (label.empty() || label.find_first_of(",\r\n") != std::string::npos) label = "value";
    std::string out = "date," + label + "\n";
    char buf[40];
    for (std::size_t i = 0; i < series.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", series.values[i]);
        out += series.month_at(i).str();
        out += ',';
        out += buf;
        out += '\n';
    }
    return out;
}

MonthlySeries load_csv_file(const std::string& path, const std::string& value_column) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return parse_csv(in, value_column);
}

std::vector<std::string> csv_value_columns(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty CSV: missing header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split_row(line);
    if (header.size() < 2) throw FormatError("header must contain a date column and at least one value column");
    return {header.begin() + 1, header.end()};
}

MonthlySeries deflate(const MonthlySeries& index, const MonthlySeries& cpi, YearMonth base) {
    if (index.values.empty()) throw ParamError("deflate: empty index series");
    if (cpi.values.empty()) throw ParamError("deflate: empty CPI series");
    if (cpi.start > index.start || cpi.last_month() < index.last_month())
        throw CoverageError("CPI covers " + cpi.start.str() + ".." + cpi.last_month().str() +
                            " but index needs " + index.start.str() + ".." +
                            index.last_month().str());
    if (base < cpi.start || base > cpi.last_month())
        throw CoverageError("CPI does not cover base month " + base.str());

    const double cpi_base = cpi.values[static_cast<std::size_t>(months_between(cpi.start, base))];
    if (cpi_base == 0.0) throw DegenerateBaseError("CPI is zero at base month " + base.str());

    MonthlySeries out;
    out.start = index.start;
    out.label = index.label;
    out.values.resize(index.size());
    const int offset = months_between(cpi.start, index.start);
    for (std::size_t i = 0; i < index.size(); ++i) {
        const double cpi_t = cpi.values[static_cast<std::size_t>(offset) + i];
        if (cpi_t == 0.0)
            throw DegenerateError("CPI is zero at " + index.month_at(i).str());
        out.values[i] = index.values[i] * cpi_base / cpi_t;
    }
    return out;
}

SampledSeries excise(const MonthlySeries& series, const ShockCalendar& calendar) {
    for (const auto& w : calendar.windows)
        if (w.end.has_value() && *w.end < w.start)
            throw ParamError("shock window ends (" + w.end->str() + ") before it starts (" +
                             w.start.str() + ")");
    SampledSeries out;
    out.times.reserve(series.size());
    out.values.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (calendar.contains(series.month_at(i))) continue;
        out.times.push_back(static_cast<double>(i));
        out.values.push_back(series.values[i]);
    }
    if (out.values.empty())
        throw EmptySeriesError("excision removed every observation");
    return out;
}

SampledSeries as_sampled(const MonthlySeries& series) {
    return excise(series, ShockCalendar{});
}

ShockCalendar builtin_calendar(Country country) {
    // Shared backbone: missile crisis, two oil shocks, the 1999-2003 oil run-up,
    // the 2001 attacks, the Iraq war, and the open-ended Covid window.
    const YearMonth attacks_start{2001, 9};
    const YearMonth attacks_end_us{2002, 1};
    const YearMonth attacks_end_other{2001, 11};

    ShockCalendar cal;
    cal.windows.push_back({{1962, 10}, YearMonth{1962, 10}, "Cuban missile crisis"});
    cal.windows.push_back({{1974, 1}, YearMonth{1974, 12}, "oil price shock"});
    cal.windows.push_back({{1979, 11}, YearMonth{1980, 6}, "oil price shock"});
    cal.windows.push_back({{1999, 12}, YearMonth{2003, 3}, "oil price run-up"});
    cal.windows.push_back({attacks_start,
                           country == Country::US ? attacks_end_us : attacks_end_other,
                           "terrorist attacks"});
    cal.windows.push_back({{2003, 2}, YearMonth{2003, 4}, "Iraq war"});
    cal.windows.push_back({{2020, 2}, std::nullopt, "Covid pandemic"});

    if (country == Country::Germany)
        cal.windows.push_back({{1990, 3}, YearMonth{1990, 12}, "reunification"});
    if (country == Country::Japan)
        cal.windows.push_back({{2011, 3}, YearMonth{2011, 4}, "Fukushima nuclear accident"});

    std::sort(cal.windows.begin(), cal.windows.end(),
              [](const ShockWindow& a, const ShockWindow& b) { return a.start < b.start; });
    return cal;
}

ShockCalendar parse_calendar_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("calendar JSON: ") + e.what());
    }
    if (!doc.is_array()) throw FormatError("calendar JSON: top level must be an array");
    ShockCalendar cal;
    for (const auto& item : doc) {
        if (!item.is_object() || !item.contains("start"))
            throw FormatError("calendar JSON: each entry needs at least a \"start\" field");
        ShockWindow w;
        w.start = YearMonth::parse(item.at("start").get<std::string>());
        if (item.contains("end") && !item.at("end").is_null())
            w.end = YearMonth::parse(item.at("end").get<std::string>());
        if (item.contains("reason") && item.at("reason").is_string())
            w.reason = item.at("reason").get<std::string>();
        if (w.end.has_value() && *w.end < w.start)
            throw FormatError("calendar JSON: window ends before it starts (" + w.start.str() + ")");
        cal.windows.push_back(std::move(w));
    }
    return cal;
}

ShockCalendar load_calendar_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_calendar_json(buf.str());
}

std::string serialize_calendar_json(const ShockCalendar& calendar) {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& w : calendar.windows) {
        nlohmann::json item;
        item["start"] = w.start.str();
        item["end"] = w.end.has_value() ? nlohmann::json(w.end->str()) : nlohmann::json(nullptr);
        item["reason"] = w.reason;
        doc.push_back(std::move(item));
    }
    return doc.dump(2) + "\n";
}

}  // namespace periodica
