#pragma once

#include <cstddef>

#include "solarband/forecaster.hpp"

namespace solarband {

/// diff = realized - predicted, vol = |diff|, and vol_pred the persistence
/// forecast of vol one horizon ahead: vol_pred[t + H] = vol[t].
struct VolatilityTrack {
  Minute start;
  std::size_t horizon_h = kDefaultHorizon;
  Track diff;
  Track vol;
  Track vol_pred;

  [[nodiscard]] std::size_t size() const noexcept { return vol.size(); }
};

/// Throws NoDefinedRecords when no record has both realized and predicted.
VolatilityTrack volatility(const ForecastTrack& track);

}  // namespace solarband
