#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "periodica/errors.hpp"

namespace periodica {

/// Calendar month. Ordering follows the calendar.
struct YearMonth {
    int year = 1960;
    int month = 1;  // 1..12

    auto operator<=>(const YearMonth&) const = default;

    /// Months since 0000-01; the arithmetic backbone for gaps and offsets.
    int index() const noexcept { return year * 12 + (month - 1); }

    static YearMonth from_index(int idx);
    YearMonth plus_months(int m) const { return from_index(index() + m); }

    /// Accepts "YYYY-MM" and "YYYY:MM".
    static YearMonth parse(std::string_view text);

    /// "YYYY-MM", zero-padded.
    std::string str() const;
};

/// to - from, in months.
inline int months_between(YearMonth from, YearMonth to) { return to.index() - from.index(); }

/// Gap-free monthly observations starting at `start`.
struct MonthlySeries {
    YearMonth start;
    std::vector<double> values;
    std::string label;

    std::size_t size() const noexcept { return values.size(); }
    YearMonth month_at(std::size_t i) const { return start.plus_months(static_cast<int>(i)); }
    YearMonth last_month() const { return month_at(values.empty() ? 0 : values.size() - 1); }
};

/// Possibly irregular observations; times are months since some epoch month,
/// strictly increasing.
struct SampledSeries {
    std::vector<double> times;
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    double span() const { return times.empty() ? 0.0 : times.back() - times.front(); }
};

/// [start, end] inclusive; no end means the window runs to the end of any series.
struct ShockWindow {
    YearMonth start;
    std::optional<YearMonth> end;
    std::string reason;

    bool open_ended() const noexcept { return !end.has_value(); }
    bool contains(YearMonth m) const {
        return start <= m && (!end.has_value() || m <= *end);
    }
};

/// Excision calendar; windows may overlap, excision removes their union.
struct ShockCalendar {
    std::vector<ShockWindow> windows;

    bool contains(YearMonth m) const {
        for (const auto& w : windows)
            if (w.contains(m)) return true;
        return false;
    }
    bool empty() const noexcept { return windows.empty(); }
};

enum class Country { US, Japan, Germany };

Country parse_country(std::string_view name);
std::string country_name(Country c);

/// Parse a monthly CSV: header row, date column first, `value_column` selected
/// by header name. Rows are sorted by date; a missing month raises GapError,
/// an unparseable cell raises FormatError carrying the row number.
MonthlySeries parse_csv(std::istream& in, const std::string& value_column);
MonthlySeries parse_csv(const std::string& text, const std::string& value_column);

/// Inverse of parse_csv up to the header name: "date,<label>" then one row per
/// month with values printed so they round-trip bit-exactly.
std::string serialize_csv(const MonthlySeries& series);

/// Read a CSV file from disk; IoError if it cannot be opened.
MonthlySeries load_csv_file(const std::string& path, const std::string& value_column);

/// Names the value columns available in a CSV header (everything after the
/// date column). Used by the CLI to pick a default column.
std::vector<std::string> csv_value_columns(const std::string& text);

/// Rebase `index` to real terms: out_t = index_t * cpi(base) / cpi(t).
/// CPI must cover the index range and the base month.
MonthlySeries deflate(const MonthlySeries& index, const MonthlySeries& cpi, YearMonth base);

/// Remove observations falling inside the calendar's union of windows.
/// Survivors keep their original month coordinate (months since series start).
SampledSeries excise(const MonthlySeries& series, const ShockCalendar& calendar);

/// Regular view of a monthly series: times 0..n-1.
SampledSeries as_sampled(const MonthlySeries& series);

/// The built-in exogenous-shock calendars for the three covered markets.
ShockCalendar builtin_calendar(Country country);

/// Calendar file schema: JSON array of
///   {"start": "YYYY-MM", "end": "YYYY-MM" | null, "reason": string}.
ShockCalendar parse_calendar_json(const std::string& text);
ShockCalendar load_calendar_file(const std::string& path);
std::string serialize_calendar_json(const ShockCalendar& calendar);

}  // namespace periodica
