#include <doctest.h>

#include <random>

#include "solarband/series.hpp"
#include "test_util.hpp"

using namespace solarband;
using namespace solarband::testing;

TEST_CASE("timestamps round-trip through text") {
  const Minute t = make_minute(2013, 2, 28, 23, 59);
  CHECK(format_timestamp(t) == "2013-02-28T23:59:00Z");
  CHECK(parse_timestamp("2013-02-28T23:59:00Z") == t);
  CHECK(format_timestamp(t + 1) == "2013-03-01T00:00:00Z");
  CHECK(format_timestamp(make_minute(1969, 12, 31, 23, 0)) == "1969-12-31T23:00:00Z");
}

TEST_CASE("ingest_csv builds a uniform series") {
  SUBCASE("consecutive rows") {
    const auto s = ingest_csv(
        "timestamp,ghi_wm2\n2013-06-01T10:00:00Z,0\n2013-06-01T10:01:00Z,100\n2013-06-01T10:02:00Z,200\n");
    REQUIRE(s.size() == 3);
    CHECK(s.gap_count() == 0);
    CHECK(s.start() == make_minute(2013, 6, 1, 10, 0));
    CHECK(*s[1] == 100.0);
    CHECK(*s[2] == 200.0);
  }
  SUBCASE("missing minute becomes a gap") {
    const auto s = ingest_csv("timestamp,ghi_wm2\n2013-06-01T10:00:00Z,10\n2013-06-01T10:02:00Z,30\n");
    REQUIRE(s.size() == 3);
    CHECK(*s[0] == 10.0);
    CHECK_FALSE(s[1].has_value());
    CHECK(*s[2] == 30.0);
  }
  SUBCASE("final newline is optional") {
    CHECK(ingest_csv("timestamp,ghi_wm2\n2013-06-01T10:00:00Z,7").size() == 1);
  }
}

TEST_CASE("ingest_csv reports each contract violation with its own error") {
  const auto code = [](const char* text) { return error_code_of([&] { ingest_csv(text); }); };
  CHECK(code("time,ghi\n2013-06-01T10:00:00Z,1\n") == ErrorCode::MalformedHeader);
  CHECK(code("") == ErrorCode::MalformedHeader);
  CHECK(code("timestamp,ghi_wm2\n2013-06-01T10:00:00Z,-5\n") == ErrorCode::NegativeIrradiance);
  CHECK(code("timestamp,ghi_wm2\n2013-06-01T10:01:00Z,1\n2013-06-01T10:00:00Z,1\n") ==
        ErrorCode::NonMonotoneTimestamp);
  CHECK(code("timestamp,ghi_wm2\n2013-06-01T10:00:00Z,1\n2013-06-01T10:00:00Z,2\n") ==
        ErrorCode::DuplicateTimestamp);
  CHECK(code("timestamp,ghi_wm2\n2013-06-01T10:00:30Z,1\n") == ErrorCode::NonMinuteAlignedTimestamp);
  CHECK(code("timestamp,ghi_wm2\n2013-06-01T10:00:00Z,1,000\n") == ErrorCode::MalformedRow);
  CHECK(code("timestamp,ghi_wm2\n2013-06-01T10:00:00Z,nan\n") == ErrorCode::MalformedRow);
  CHECK(code("timestamp,ghi_wm2\n2013-06-01 10:00:00Z,1\n") == ErrorCode::MalformedRow);
  CHECK(code("timestamp,ghi_wm2\n2013-02-30T10:00:00Z,1\n") == ErrorCode::MalformedRow);
  CHECK(code("timestamp,ghi_wm2\n2013-06-01T10:00:00Z,1\r\n") == ErrorCode::MalformedRow);
  CHECK(code("timestamp,ghi_wm2\n") == ErrorCode::EmptySeries);
}

TEST_CASE("series invariants are enforced at construction") {
  CHECK(error_code_of([] { IrradianceSeries(t0(), {}); }) == ErrorCode::EmptySeries);
  CHECK(error_code_of([] { series_of({1.0, -0.5}); }) == ErrorCode::NegativeIrradiance);
}

TEST_CASE("daylight_mask") {
  CHECK(daylight_mask(series_of({0, 0, 0}), 1.0).flags == std::vector<bool>{false, false, false});
  CHECK(daylight_mask(series_of({0, 50, 0}), 1.0).flags == std::vector<bool>{false, true, false});
  CHECK(daylight_mask(series_of({0}), 0.0).flags == std::vector<bool>{false});
  CHECK(daylight_mask(IrradianceSeries(t0(), {Sample{}, 10.0}), 1.0).flags == std::vector<bool>{false, true});
  CHECK(error_code_of([] { daylight_mask(series_of({1}), -1.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("daylight_mask is monotone in eps_day") {
  std::mt19937_64 rng(7);
  const auto s = random_series(rng, 500, 0.1);
  const auto low = daylight_mask(s, 100.0);
  const auto high = daylight_mask(s, 400.0);
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!low[k]) CHECK_FALSE(high[k]);
  }
  CHECK(daylight_mask(s, 100.0) == low);
}

TEST_CASE("emit_csv format") {
  const auto s = IrradianceSeries(make_minute(2013, 6, 1, 12, 0), {123.456, Sample{}, 0.0});
  CHECK(emit_csv(s) == "timestamp,ghi_wm2\n2013-06-01T12:00:00Z,123.456\n2013-06-01T12:02:00Z,0\n");
}

TEST_CASE("emit/ingest round-trip is bit-exact and never fabricates values") {
  std::mt19937_64 rng(42);
  for (int rep = 0; rep < 50; ++rep) {
    const auto s = random_series(rng, 1 + rep * 37, 0.2);
    const auto text = emit_csv(s);
    const auto back = ingest_csv(text);
    REQUIRE(back == s);
    for (std::size_t k = 0; k < back.size(); ++k) {
      if (back[k]) CHECK(text.find(format_decimal(*back[k])) != std::string::npos);
    }
  }
}
