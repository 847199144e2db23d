#include "solarband/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "solarband/error.hpp"

namespace solarband {
namespace {

constexpr std::string_view kModule = "synth";
constexpr double kMinFactor = 0.05;
constexpr double kMaxFactor = 1.0;

double clip_factor(double c) { return std::clamp(c, kMinFactor, kMaxFactor); }

// Mean-reverting factor around `mean`; `rate` is the per-minute pull.
struct Reverting {
  double mean;
  double rate;
  double noise;
};

constexpr Reverting kClear{0.99, 0.1, 0.002};
constexpr Reverting kOvercast{0.30, 0.05, 0.01};
constexpr double kBrokenHigh = 0.95;
constexpr double kBrokenLow = 0.30;
constexpr double kBrokenNoise = 0.02;

void validate(const SynthConfig& cfg) {
  const auto fail = [](const char* what) { throw Error(ErrorCode::InvalidArgument, kModule, what); };
  if (!(cfg.clear_sky_peak > 0.0) || !std::isfinite(cfg.clear_sky_peak)) fail("clear_sky_peak must be > 0");
  if (cfg.days < 1) fail("days must be >= 1");
  if (cfg.day_of_year < 1 || cfg.day_of_year > 366) fail("day_of_year must be in 1..366");
  if (!(cfg.latitude >= -90.0 && cfg.latitude <= 90.0)) fail("latitude must be in [-90, 90]");
  if (!(cfg.broken_high_dwell > 0.0) || !(cfg.broken_low_dwell > 0.0)) fail("dwell means must be > 0");
}

}  // namespace

CloudRegime parse_regime(std::string_view name) {
  if (name == "clear") return CloudRegime::Clear;
  if (name == "broken") return CloudRegime::Broken;
  if (name == "overcast") return CloudRegime::Overcast;
  throw Error(ErrorCode::InvalidArgument, kModule, "unknown regime '" + std::string(name) + "'");
}

std::string_view to_string(CloudRegime r) noexcept {
  switch (r) {
    case CloudRegime::Clear: return "clear";
    case CloudRegime::Broken: return "broken";
    case CloudRegime::Overcast: return "overcast";
  }
  return "?";
}

double sin_solar_elevation(double latitude_deg, int day_of_year, double minute_of_day) noexcept {
  constexpr double deg = std::numbers::pi / 180.0;
  const double declination =
      23.45 * deg * std::sin(2.0 * std::numbers::pi * (284.0 + day_of_year) / 365.0);
  const double hour_angle = 15.0 * deg * (minute_of_day / 60.0 - 12.0);
  const double lat = latitude_deg * deg;
  return std::sin(lat) * std::sin(declination) +
         std::cos(lat) * std::cos(declination) * std::cos(hour_angle);
}

IrradianceSeries generate(const SynthConfig& cfg) {
  validate(cfg);
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss;
  std::exponential_distribution<double> dwell_high(1.0 / cfg.broken_high_dwell);
  std::exponential_distribution<double> dwell_low(1.0 / cfg.broken_low_dwell);

  const std::size_t total = static_cast<std::size_t>(cfg.days) * 1440;
  std::vector<Sample> values(total);

  double factor = cfg.cloud_regime == CloudRegime::Clear      ? kClear.mean
                  : cfg.cloud_regime == CloudRegime::Overcast ? kOvercast.mean
                                                              : kBrokenHigh;
  bool high = true;
  double remaining = dwell_high(rng);

  for (std::size_t k = 0; k < total; ++k) {
    switch (cfg.cloud_regime) {
      case CloudRegime::Clear:
        factor = clip_factor(factor + kClear.rate * (kClear.mean - factor) + kClear.noise * gauss(rng));
        break;
      case CloudRegime::Overcast:
        factor = clip_factor(factor + kOvercast.rate * (kOvercast.mean - factor) +
                             kOvercast.noise * gauss(rng));
        break;
      case CloudRegime::Broken:
        remaining -= 1.0;
        while (remaining <= 0.0) {
          high = !high;
          remaining += high ? dwell_high(rng) : dwell_low(rng);
        }
        factor = clip_factor((high ? kBrokenHigh : kBrokenLow) + kBrokenNoise * gauss(rng));
        break;
    }
    const int day = static_cast<int>(k / 1440);
    const int doy = (cfg.day_of_year - 1 + day) % 365 + 1;
    const double sin_elev = sin_solar_elevation(cfg.latitude, doy, static_cast<double>(k % 1440));
    values[k] = sin_elev > 0.0 ? cfg.clear_sky_peak * sin_elev * factor : 0.0;
  }

  const Minute start = make_minute(cfg.year, 1, 1) + static_cast<std::int64_t>(cfg.day_of_year - 1) * 1440;
  return IrradianceSeries(start, std::move(values));
}

}  // namespace solarband
