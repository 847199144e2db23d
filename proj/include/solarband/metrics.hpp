#pragma once

#include <cstddef>
#include <string>

#include "solarband/bands.hpp"
#include "solarband/forecaster.hpp"
#include "solarband/series.hpp"

namespace solarband {

struct ScoreCard {
  double rmse = 0.0;
  double mae = 0.0;
  double nrmse = 0.0;  // rmse / mean realized over the scored records
  double coverage = 0.0;
  double mean_band_width = 0.0;
  std::size_t n_scored = 0;
};

/// Scores daylight records where realized, predicted and both frontiers are
/// defined. Throws NoDefinedRecords if there are none.
ScoreCard score(const ForecastTrack& f, const BandTrack& b, const DaylightMask& mask);

/// Header `rmse,mae,nrmse,coverage,mean_band_width,n_scored` plus one row.
std::string scorecard_csv(const ScoreCard& card);

}  // namespace solarband
