#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "solarband/bands.hpp"
#include "solarband/forecaster.hpp"
#include "solarband/normality.hpp"
#include "solarband/series.hpp"

namespace solarband {

/// `timestamp,predicted_wm2,realized_wm2`; undefined fields are left empty and
/// rows with neither field defined are omitted.
std::string emit_forecast_csv(const ForecastTrack& f);
ForecastTrack ingest_forecast_csv(std::string_view text, std::size_t horizon_h);

/// `timestamp,lower_wm2,upper_wm2,alpha`, one row per time with defined frontiers.
std::string emit_band_csv(const BandTrack& b);

/// `timestamp,alpha,n_eligible`; alpha is empty for windows that could not be calibrated.
std::string emit_alpha_history_csv(std::span<const CalibrationEvent> events);

/// `test,n,statistic,threshold,level,reject,sample_mean,sample_std,approximate`.
std::string emit_normality_csv(std::span<const NormalityReport> reports);

/// Single-column `diff_wm2` sample file.
std::vector<double> ingest_diff_csv(std::string_view text);

}  // namespace solarband
