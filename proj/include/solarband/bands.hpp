#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "solarband/forecaster.hpp"
#include "solarband/risk.hpp"
#include "solarband/series.hpp"

namespace solarband {

inline constexpr std::size_t kDefaultWindowDays = 3;
inline constexpr double kDefaultTargetCoverage = 0.68;
inline constexpr std::size_t kDefaultRecalEvery = 1440;

struct Frontiers {
  double lower;
  double upper;
};

/// lower = max(0, predicted - alpha*vol_pred), upper = predicted + alpha*vol_pred.
Frontiers band_frontiers(double predicted, double vol_pred, double alpha) noexcept;

/// The single counting rule used everywhere coverage is measured. Hits on a
/// frontier count as inside.
[[nodiscard]] inline bool inside_band(double realized, Frontiers f) noexcept {
  return f.lower <= realized && realized <= f.upper;
}

/// One recalibration attempt. `alpha` is empty when the window could not be
/// calibrated; the previous alpha then stays in force.
struct CalibrationEvent {
  Minute time;
  std::optional<double> alpha;
  std::size_t n_eligible = 0;

  friend bool operator==(const CalibrationEvent&, const CalibrationEvent&) = default;
};

struct BandTrack {
  Minute start;
  Track lower;
  Track upper;
  std::vector<double> alpha;  // multiplier in force at each time
  std::size_t window_days = kDefaultWindowDays;
  double target_coverage = kDefaultTargetCoverage;
  std::vector<CalibrationEvent> calibrations;

  [[nodiscard]] std::size_t size() const noexcept { return lower.size(); }
  friend bool operator==(const BandTrack&, const BandTrack&) = default;
};

/// Frontiers predicted +/- vol_pred, alpha = 1 everywhere.
BandTrack band_cb1(const ForecastTrack& f, const VolatilityTrack& v);

/// Indices k in [from, to) usable for calibration: daylight, realized,
/// predicted and vol_pred all defined, vol_pred > 0.
std::vector<std::size_t> eligible_records(const ForecastTrack& f, const VolatilityTrack& v,
                                          const DaylightMask& mask, std::size_t from, std::size_t to);

/// Number of `records` whose realized value lies inside the alpha-band.
std::size_t count_covered(const ForecastTrack& f, const VolatilityTrack& v,
                          std::span<const std::size_t> records, double alpha);

/// |realized - predicted| / vol_pred, raised to the next alpha whose band
/// contains `realized` when rounding in band_frontiers leaves the record just
/// outside at the plain quotient. Requires vol_pred > 0 and realized >= 0.
double covering_ratio(double predicted, double vol_pred, double realized);

/// Smallest covering ratio over the eligible records of [t - window_days, t)
/// whose alpha-band contains at least `target` of them (the ceil(target * n)-th
/// smallest ratio, up to rounding ties).
/// Throws UncalibratableWindow for an empty eligible set (or a zero
/// multiplier), InvalidArgument for target outside (0, 1).
double calibrate_alpha(const ForecastTrack& f, const VolatilityTrack& v, const DaylightMask& mask,
                       Minute t, std::size_t window_days = kDefaultWindowDays,
                       double target = kDefaultTargetCoverage);

struct Cb2Config {
  std::size_t window_days = kDefaultWindowDays;
  double target = kDefaultTargetCoverage;
  /// Recalibration happens at every time whose minute count is a multiple of
  /// this value (midnight UTC for the daily default).
  std::size_t recal_every = kDefaultRecalEvery;
  /// Skips calibration and uses this multiplier everywhere.
  std::optional<double> alpha_override;
};

/// Before the first successful calibration alpha falls back to 1.
BandTrack band_cb2(const ForecastTrack& f, const VolatilityTrack& v, const DaylightMask& mask,
                   const Cb2Config& cfg = {});

}  // namespace solarband
