#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "solarband/series.hpp"

namespace solarband {

inline constexpr std::size_t kDefaultTrendWindow = 120;

/// Additive split value = trend + fluctuation, with the trend estimated by a
/// causal sliding-window straight-line least-squares fit.
///
/// Index k is defined only when the `window_w` samples ending at k are all
/// present. `slope[k]` is the fitted line's slope (W/m² per minute) and lets
/// the forecaster extrapolate the same fit.
struct Decomposition {
  Minute start;
  std::size_t window_w = kDefaultTrendWindow;
  Track trend;
  Track fluctuation;
  Track slope;

  [[nodiscard]] std::size_t size() const noexcept { return trend.size(); }
};

/// Straight-line fit over y[0..n), abscissae 0..n-1. Returns the fitted
/// value at the last abscissa and the slope. Summation order is fixed.
struct LineFit {
  double value_at_end;
  double slope;
};
LineFit fit_line_at_end(std::span<const double> y);

/// Throws InvalidArgument for window_w < 2 and SeriesTooShort when the series
/// has fewer than window_w samples.
Decomposition extract_trend(const IrradianceSeries& s, std::size_t window_w = kDefaultTrendWindow);

}  // namespace solarband
