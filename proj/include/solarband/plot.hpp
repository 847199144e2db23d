#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include "solarband/bands.hpp"
#include "solarband/forecaster.hpp"
#include "solarband/series.hpp"

namespace solarband {

enum class PlotKind { Monthly, Zoom, Histogram };

struct PlotRequest {
  PlotKind kind = PlotKind::Monthly;
  std::optional<Minute> from;  // zoom range [from, to]; required for Zoom
  std::optional<Minute> to;
  std::size_t bins = 50;       // histogram only
  double eps_day = kDefaultEpsDay;  // histogram uses daylight errors only
  std::string title;
};

/// Measured series in blue, prediction in red, band frontiers as black dashed
/// lines; the histogram kind draws the forecast-error histogram (blue bars)
/// with its fitted normal curve (red). Output is a pure function of the
/// inputs. `forecast` and `band` may be null for time plots; the histogram
/// needs `forecast`.
std::string render_plot(const IrradianceSeries& series, const ForecastTrack* forecast,
                        const BandTrack* band, const PlotRequest& request);

/// render_plot + write to `out`. Throws Io when the file cannot be written.
std::string emit_plot(const IrradianceSeries& series, const ForecastTrack* forecast,
                      const BandTrack* band, const PlotRequest& request,
                      const std::filesystem::path& out);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace solarband
