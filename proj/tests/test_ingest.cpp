#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "periodica/errors.hpp"
#include "periodica/ingest.hpp"

using namespace periodica;

TEST_CASE("month parsing accepts hyphen and colon notation") {
    CHECK(YearMonth::parse("1960-01") == YearMonth{1960, 1});
    CHECK(YearMonth::parse("1957:01") == YearMonth{1957, 1});
    CHECK(YearMonth::parse("2022-07") == YearMonth{2022, 7});
    CHECK_THROWS_AS(YearMonth::parse("1960-13"), FormatError);
    CHECK_THROWS_AS(YearMonth::parse("1960-00"), FormatError);
    CHECK_THROWS_AS(YearMonth::parse("196001"), FormatError);
    CHECK_THROWS_AS(YearMonth::parse(""), FormatError);
}

TEST_CASE("month arithmetic crosses year boundaries") {
    const YearMonth m{1960, 11};
    CHECK(m.plus_months(3) == YearMonth{1961, 2});
    CHECK(m.plus_months(-11) == YearMonth{1959, 12});
    CHECK(m.plus_months(0) == m);
    CHECK(months_between(YearMonth{1960, 1}, YearMonth{1961, 1}) == 12);
    CHECK(months_between(YearMonth{1961, 1}, YearMonth{1960, 1}) == -12);
    CHECK(YearMonth::from_index(m.index()) == m);
    CHECK(YearMonth{1960, 1} < YearMonth{1960, 2});
    CHECK(YearMonth{1959, 12} < YearMonth{1960, 1});
}

TEST_CASE("two-row file parses") {
    const MonthlySeries s = parse_csv("date,v\n1960-01,10\n1960-02,11", "v");
    CHECK(s.start == YearMonth{1960, 1});
    CHECK(s.values == std::vector<double>{10.0, 11.0});
    CHECK(s.label == "v");
}

TEST_CASE("rows may arrive out of order") {
    const MonthlySeries s = parse_csv("date,v\n1960-02,11\n1960-01,10", "v");
    CHECK(s.start == YearMonth{1960, 1});
    CHECK(s.values == std::vector<double>{10.0, 11.0});
}

TEST_CASE("missing month raises a gap error") {
    CHECK_THROWS_AS(parse_csv("date,v\n1960-01,1\n1960-03,2", "v"), GapError);
}

TEST_CASE("bad cell names its row") {
    try {
        parse_csv("date,v\n1960-01,1\n1960-02,abc", "v");
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }
}

TEST_CASE("duplicate month is rejected") {
    CHECK_THROWS_AS(parse_csv("date,v\n1960-01,1\n1960-01,2", "v"), FormatError);
}

TEST_CASE("value column is selected by name") {
    const std::string text = "date,a,b\n1960-01,1,10\n1960-02,2,20";
    CHECK(parse_csv(text, "a").values == std::vector<double>{1.0, 2.0});
    CHECK(parse_csv(text, "b").values == std::vector<double>{10.0, 20.0});
    CHECK_THROWS_AS(parse_csv(text, "c"), FormatError);
    CHECK(csv_value_columns(text) == std::vector<std::string>{"a", "b"});
}

TEST_CASE("empty and header-only input is rejected") {
    CHECK_THROWS_AS(parse_csv("", "v"), FormatError);
    CHECK_THROWS_AS(parse_csv("date,v\n", "v"), FormatError);
}

TEST_CASE("serialize then parse is the identity") {
    MonthlySeries s;
    s.start = YearMonth{1987, 11};
    s.label = "index";
    s.values = {1.0, -2.5, 0.1234567890123456, 1e-300, 3.0e17};
    const MonthlySeries back = parse_csv(serialize_csv(s), "index");
    CHECK(back.start == s.start);
    CHECK(back.label == s.label);
    REQUIRE(back.values.size() == s.values.size());
    for (std::size_t i = 0; i < s.values.size(); ++i) CHECK(back.values[i] == s.values[i]);
}

TEST_CASE("deflation cancels nominal growth") {
    MonthlySeries index{YearMonth{1960, 1}, {100.0, 110.0}, "idx"};
    MonthlySeries cpi{YearMonth{1960, 1}, {100.0, 110.0}, "cpi"};
    const MonthlySeries real = deflate(index, cpi, YearMonth{1960, 1});
    CHECK(real.values == std::vector<double>{100.0, 100.0});
    CHECK(real.start == index.start);
}

TEST_CASE("deflation is the identity at the base month") {
    MonthlySeries index{YearMonth{1960, 1}, {100.0}, "idx"};
    MonthlySeries cpi{YearMonth{1960, 1}, {100.0}, "cpi"};
    CHECK(deflate(index, cpi, YearMonth{1960, 1}).values == std::vector<double>{100.0});
}

TEST_CASE("deflation hand arithmetic") {
    MonthlySeries index{YearMonth{1960, 1}, {200.0, 210.0, 220.0}, "idx"};
    MonthlySeries cpi{YearMonth{1960, 1}, {100.0, 105.0, 110.0}, "cpi"};
    const MonthlySeries real = deflate(index, cpi, YearMonth{1960, 1});
    REQUIRE(real.size() == 3);
    CHECK(real.values[0] == doctest::Approx(200.0).epsilon(1e-12));
    CHECK(real.values[1] == doctest::Approx(200.0).epsilon(1e-12));
    CHECK(real.values[2] == doctest::Approx(200.0).epsilon(1e-12));
}

TEST_CASE("deflation with a constant cpi is idempotent") {
    MonthlySeries index{YearMonth{1970, 6}, {3.0, 5.0, 8.0, 13.0}, "idx"};
    MonthlySeries cpi{YearMonth{1970, 1}, std::vector<double>(12, 77.0), "cpi"};
    const MonthlySeries once = deflate(index, cpi, YearMonth{1970, 7});
    const MonthlySeries twice = deflate(once, cpi, YearMonth{1970, 7});
    CHECK(once.values == index.values);
    CHECK(twice.values == once.values);
}

TEST_CASE("deflation coverage and base errors") {
    MonthlySeries index{YearMonth{1960, 1}, {1.0, 2.0, 3.0}, "idx"};
    MonthlySeries short_cpi{YearMonth{1960, 1}, {100.0, 100.0}, "cpi"};
    CHECK_THROWS_AS(deflate(index, short_cpi, YearMonth{1960, 1}), CoverageError);
    MonthlySeries late_cpi{YearMonth{1960, 2}, {100.0, 100.0, 100.0}, "cpi"};
    CHECK_THROWS_AS(deflate(index, late_cpi, YearMonth{1960, 2}), CoverageError);
    MonthlySeries cpi{YearMonth{1960, 1}, {100.0, 100.0, 100.0}, "cpi"};
    CHECK_THROWS_AS(deflate(index, cpi, YearMonth{1959, 12}), CoverageError);
    MonthlySeries zero_base{YearMonth{1960, 1}, {0.0, 100.0, 100.0}, "cpi"};
    CHECK_THROWS_AS(deflate(index, zero_base, YearMonth{1960, 1}), DegenerateBaseError);
}

TEST_CASE("empty calendar excision is a no-op") {
    MonthlySeries s{YearMonth{1960, 1}, {5.0, 6.0, 7.0}, "s"};
    const SampledSeries out = excise(s, ShockCalendar{});
    CHECK(out.times == std::vector<double>{0.0, 1.0, 2.0});
    CHECK(out.values == s.values);
}

TEST_CASE("window covering the whole range empties the series") {
    MonthlySeries s{YearMonth{1960, 1}, {5.0, 6.0, 7.0}, "s"};
    ShockCalendar cal;
    cal.windows.push_back(ShockWindow{YearMonth{1959, 1}, YearMonth{1961, 1}, "all"});
    CHECK_THROWS_AS(excise(s, cal), EmptySeriesError);
}

TEST_CASE("months four through six drop out of a twelve-month series") {
    MonthlySeries s{YearMonth{1960, 1}, {}, "s"};
    for (int i = 0; i < 12; ++i) s.values.push_back(static_cast<double>(i));
    ShockCalendar cal;
    cal.windows.push_back(ShockWindow{YearMonth{1960, 5}, YearMonth{1960, 7}, "test"});
    const SampledSeries out = excise(s, cal);
    CHECK(out.times == std::vector<double>{0, 1, 2, 3, 7, 8, 9, 10, 11});
    CHECK(out.values == std::vector<double>{0, 1, 2, 3, 7, 8, 9, 10, 11});
    CHECK(out.size() + 3 == s.size());
}

TEST_CASE("open-ended window removes everything from its start") {
    MonthlySeries s{YearMonth{2019, 1}, std::vector<double>(24, 1.0), "s"};
    ShockCalendar cal;
    cal.windows.push_back(ShockWindow{YearMonth{2020, 2}, std::nullopt, "open"});
    const SampledSeries out = excise(s, cal);
    CHECK(out.size() == 13);  // 2019-01 .. 2020-01 survive
    CHECK(out.times.back() == 12.0);
}

TEST_CASE("overlapping windows excise their union") {
    MonthlySeries s{YearMonth{1960, 1}, std::vector<double>(10, 1.0), "s"};
    ShockCalendar cal;
    cal.windows.push_back(ShockWindow{YearMonth{1960, 2}, YearMonth{1960, 5}, "a"});
    cal.windows.push_back(ShockWindow{YearMonth{1960, 4}, YearMonth{1960, 8}, "b"});
    const SampledSeries out = excise(s, cal);
    CHECK(out.times == std::vector<double>{0.0, 8.0, 9.0});
}

TEST_CASE("built-in calendars carry the documented windows") {
    const ShockCalendar us = builtin_calendar(Country::US);
    auto has_window = [](const ShockCalendar& cal, YearMonth a,
                         std::optional<YearMonth> b) {
        for (const auto& w : cal.windows)
            if (w.start == a && w.end == b) return true;
        return false;
    };
    CHECK(has_window(us, YearMonth{1962, 10}, YearMonth{1962, 10}));
    CHECK(has_window(us, YearMonth{1974, 1}, YearMonth{1974, 12}));
    CHECK(has_window(us, YearMonth{2020, 2}, std::nullopt));
    CHECK(has_window(us, YearMonth{2001, 9}, YearMonth{2002, 1}));

    const ShockCalendar de = builtin_calendar(Country::Germany);
    CHECK(has_window(de, YearMonth{1990, 3}, YearMonth{1990, 12}));
    CHECK(has_window(de, YearMonth{2001, 9}, YearMonth{2001, 11}));

    const ShockCalendar jp = builtin_calendar(Country::Japan);
    CHECK(has_window(jp, YearMonth{2011, 3}, YearMonth{2011, 4}));
    CHECK(has_window(jp, YearMonth{2001, 9}, YearMonth{2001, 11}));

    CHECK_THROWS_AS(parse_country("france"), UnknownCountryError);
    CHECK(parse_country("us") == Country::US);
    CHECK(parse_country("Japan") == Country::Japan);
    CHECK(parse_country("germany") == Country::Germany);
}

TEST_CASE("calendar json round trip") {
    const ShockCalendar us = builtin_calendar(Country::US);
    const ShockCalendar back = parse_calendar_json(serialize_calendar_json(us));
    REQUIRE(back.windows.size() == us.windows.size());
    for (std::size_t i = 0; i < us.windows.size(); ++i) {
        CHECK(back.windows[i].start == us.windows[i].start);
        CHECK(back.windows[i].end == us.windows[i].end);
        CHECK(back.windows[i].open_ended() == us.windows[i].open_ended());
    }
    CHECK_THROWS_AS(parse_calendar_json("not json"), FormatError);
    CHECK_THROWS_AS(parse_calendar_json("{\"start\":\"1960-01\"}"), FormatError);
}

TEST_CASE("as_sampled mirrors the monthly grid") {
    MonthlySeries s{YearMonth{1960, 1}, {4.0, 5.0}, "s"};
    const SampledSeries out = as_sampled(s);
    CHECK(out.times == std::vector<double>{0.0, 1.0});
    CHECK(out.values == s.values);
}
