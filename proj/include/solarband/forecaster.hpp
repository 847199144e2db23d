#pragma once

#include <cstddef>

#include "solarband/decomposition.hpp"
#include "solarband/series.hpp"

namespace solarband {

inline constexpr std::size_t kDefaultHorizon = 60;

/// Forecast records indexed by target time: index k is time start + k, and
/// predicted[k] was issued at k - horizon_h. realized[k] is the measurement.
struct ForecastTrack {
  Minute start;
  std::size_t horizon_h = kDefaultHorizon;
  Track predicted;
  Track realized;

  [[nodiscard]] std::size_t size() const noexcept { return predicted.size(); }
  [[nodiscard]] Minute time_at(std::size_t k) const { return start + static_cast<std::int64_t>(k); }
  [[nodiscard]] bool defined(std::size_t k) const { return predicted[k] && realized[k]; }
  friend bool operator==(const ForecastTrack&, const ForecastTrack&) = default;
};

/// Extrapolates the trailing straight-line fit issued at t0 to t0 + horizon_h,
/// clamped below at zero.
ForecastTrack forecast_trend(const IrradianceSeries& s, const Decomposition& d,
                             std::size_t horizon_h = kDefaultHorizon);

/// predicted[t] = value[t - horizon_h].
ForecastTrack forecast_persistence(const IrradianceSeries& s, std::size_t horizon_h = kDefaultHorizon);

}  // namespace solarband
