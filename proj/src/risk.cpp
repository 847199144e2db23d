#include "solarband/risk.hpp"

#include <cmath>

#include "solarband/error.hpp"

namespace solarband {

VolatilityTrack volatility(const ForecastTrack& track) {
  const std::size_t n = track.size();
  VolatilityTrack v{track.start, track.horizon_h, Track(n), Track(n), Track(n)};
  std::size_t defined = 0;
  for (std::size_t t = 0; t < n; ++t) {
    if (!track.defined(t)) continue;
    ++defined;
    v.diff[t] = *track.realized[t] - *track.predicted[t];
    v.vol[t] = std::fabs(*v.diff[t]);
  }
  if (defined == 0) throw Error(ErrorCode::NoDefinedRecords, "risk", "forecast track is empty");
  for (std::size_t t = track.horizon_h; t < n; ++t) v.vol_pred[t] = v.vol[t - track.horizon_h];
  return v;
}

}  // namespace solarband
