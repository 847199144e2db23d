#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "solarband/synth.hpp"
#include "test_util.hpp"

using namespace solarband;
using namespace solarband::testing;

namespace {

double p95_abs_increment(const IrradianceSeries& s) {
  std::vector<double> inc;
  for (std::size_t k = 1; k < s.size(); ++k) inc.push_back(std::fabs(*s[k] - *s[k - 1]));
  std::sort(inc.begin(), inc.end());
  return inc[static_cast<std::size_t>(std::ceil(0.95 * inc.size())) - 1];
}

}  // namespace

TEST_CASE("clear equatorial equinox day") {
  SynthConfig cfg;
  cfg.latitude = 0.0;
  cfg.day_of_year = 81;
  cfg.cloud_regime = CloudRegime::Clear;
  cfg.clear_sky_peak = 1000.0;
  const auto s = generate(cfg);
  REQUIRE(s.size() == 1440);
  CHECK(s.gap_count() == 0);
  CHECK(s.start() == make_minute(2013, 3, 22));

  const auto peak = std::max_element(s.values().begin(), s.values().end());
  const auto at = static_cast<std::size_t>(peak - s.values().begin());
  CHECK(**peak >= 980.0);
  CHECK(**peak <= 1000.0);
  CHECK(at > 690);
  CHECK(at < 750);
  CHECK(*s[0] == 0.0);
  CHECK(*s[200] == 0.0);
  CHECK(*s[1400] == 0.0);
  // Rising through the morning, falling through the afternoon, up to small noise.
  CHECK(*s[480] > *s[420]);
  CHECK(*s[600] > *s[480]);
  CHECK(*s[960] < *s[840]);
}

TEST_CASE("samples stay in [0, peak] with exact zeros at night") {
  for (const auto regime : {CloudRegime::Clear, CloudRegime::Broken, CloudRegime::Overcast}) {
    SynthConfig cfg;
    cfg.days = 3;
    cfg.cloud_regime = regime;
    cfg.clear_sky_peak = 850.0;
    const auto s = generate(cfg);
    for (std::size_t k = 0; k < s.size(); ++k) {
      CHECK(*s[k] >= 0.0);
      CHECK(*s[k] <= 850.0);
      const int doy = cfg.day_of_year + static_cast<int>(k / 1440);
      if (sin_solar_elevation(cfg.latitude, doy, static_cast<double>(k % 1440)) <= 0.0) CHECK(*s[k] == 0.0);
    }
  }
}

TEST_CASE("generation is seed-deterministic") {
  SynthConfig cfg;
  cfg.days = 2;
  cfg.seed = 17;
  CHECK(emit_csv(generate(cfg)) == emit_csv(generate(cfg)));
  SynthConfig other = cfg;
  other.seed = 18;
  CHECK_FALSE(generate(other) == generate(cfg));
}

TEST_CASE("broken clouds ramp harder than clear sky") {
  SynthConfig clear;
  clear.days = 5;
  clear.cloud_regime = CloudRegime::Clear;
  SynthConfig broken = clear;
  broken.cloud_regime = CloudRegime::Broken;
  CHECK(p95_abs_increment(generate(broken)) > p95_abs_increment(generate(clear)));
}

TEST_CASE("overcast is dim") {
  SynthConfig cfg;
  cfg.cloud_regime = CloudRegime::Overcast;
  cfg.latitude = 0.0;
  cfg.day_of_year = 81;
  const auto s = generate(cfg);
  const auto peak = *std::max_element(s.values().begin(), s.values().end());
  CHECK(*peak < 0.5 * cfg.clear_sky_peak);
}

TEST_CASE("invalid configurations") {
  const auto code = [](auto mutate) {
    SynthConfig cfg;
    mutate(cfg);
    return error_code_of([&] { generate(cfg); });
  };
  CHECK(code([](SynthConfig& c) { c.clear_sky_peak = 0.0; }) == ErrorCode::InvalidArgument);
  CHECK(code([](SynthConfig& c) { c.days = 0; }) == ErrorCode::InvalidArgument);
  CHECK(code([](SynthConfig& c) { c.day_of_year = 367; }) == ErrorCode::InvalidArgument);
  CHECK(code([](SynthConfig& c) { c.latitude = 91.0; }) == ErrorCode::InvalidArgument);
  CHECK(error_code_of([] { parse_regime("foggy"); }) == ErrorCode::InvalidArgument);
  CHECK(parse_regime("broken") == CloudRegime::Broken);
}
