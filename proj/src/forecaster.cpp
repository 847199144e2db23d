#include "solarband/forecaster.hpp"

#include <algorithm>

#include "solarband/error.hpp"

namespace solarband {
namespace {

constexpr std::string_view kModule = "forecaster";

ForecastTrack empty_track(const IrradianceSeries& s, std::size_t horizon_h) {
  if (horizon_h < 1) throw Error(ErrorCode::InvalidArgument, kModule, "horizon must be >= 1");
  ForecastTrack f{s.start(), horizon_h, Track(s.size()), Track(s.values().begin(), s.values().end())};
  return f;
}

}  // namespace

ForecastTrack forecast_trend(const IrradianceSeries& s, const Decomposition& d, std::size_t horizon_h) {
  if (d.size() != s.size() || d.start != s.start()) {
    throw Error(ErrorCode::TrackMismatch, kModule, "decomposition does not match series");
  }
  ForecastTrack f = empty_track(s, horizon_h);
  const auto h = static_cast<double>(horizon_h);
  for (std::size_t issue = 0; issue + horizon_h < s.size(); ++issue) {
    if (!d.trend[issue]) continue;
    f.predicted[issue + horizon_h] = std::max(0.0, *d.trend[issue] + *d.slope[issue] * h);
  }
  return f;
}

ForecastTrack forecast_persistence(const IrradianceSeries& s, std::size_t horizon_h) {
  ForecastTrack f = empty_track(s, horizon_h);
  for (std::size_t t = horizon_h; t < s.size(); ++t) f.predicted[t] = s[t - horizon_h];
  return f;
}

}  // namespace solarband
