#pragma once

#include <cstdint>
#include <string_view>

#include "solarband/series.hpp"

namespace solarband {

enum class CloudRegime { Clear, Broken, Overcast };

CloudRegime parse_regime(std::string_view name);
std::string_view to_string(CloudRegime r) noexcept;

struct SynthConfig {
  double latitude = 48.69;  // degrees north
  int day_of_year = 152;    // 1..366, day of the first generated sample
  int days = 1;
  double clear_sky_peak = 1000.0;  // W/m²
  CloudRegime cloud_regime = CloudRegime::Broken;
  std::uint64_t seed = 1;
  int year = 2013;
  /// Mean dwell times of the broken-cloud switching process, minutes.
  double broken_high_dwell = 20.0;
  double broken_low_dwell = 8.0;
};

/// sin of the solar elevation at a UTC minute of the day on `day_of_year`,
/// from the cosine-declination approximation (longitude 0, solar time = UTC).
double sin_solar_elevation(double latitude_deg, int day_of_year, double minute_of_day) noexcept;

/// Samples are clear_sky(t) * cloud_factor(t) with cloud_factor in [0.05, 1];
/// the series starts at 00:00Z of `day_of_year` and spans `days` whole days.
IrradianceSeries generate(const SynthConfig& cfg);

}  // namespace solarband
