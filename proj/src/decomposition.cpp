#include "solarband/decomposition.hpp"

#include "solarband/error.hpp"

namespace solarband {
namespace {
constexpr std::string_view kModule = "decomposition";
}

LineFit fit_line_at_end(std::span<const double> y) {
  // Centred abscissae u_i = i - (n-1)/2, so sum(u) = 0 and
  // sum(u^2) = n(n^2-1)/12 exactly.
  const auto n = static_cast<double>(y.size());
  const double centre = (n - 1.0) / 2.0;
  double sum_y = 0.0;
  double sum_uy = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    sum_y += y[i];
    sum_uy += (static_cast<double>(i) - centre) * y[i];
  }
  const double sxx = n * (n * n - 1.0) / 12.0;
  const double slope = sum_uy / sxx;
  const double mean = sum_y / n;
  return {mean + slope * centre, slope};
}

Decomposition extract_trend(const IrradianceSeries& s, std::size_t window_w) {
  if (window_w < 2) throw Error(ErrorCode::InvalidArgument, kModule, "window_w must be >= 2");
  if (s.size() < window_w) {
    throw Error(ErrorCode::SeriesTooShort, kModule,
                std::to_string(s.size()) + " < " + std::to_string(window_w));
  }

  Decomposition d{s.start(), window_w, Track(s.size()), Track(s.size()), Track(s.size())};
  std::vector<double> window(window_w);
  std::size_t clean_run = 0;  // consecutive present samples ending at k
  for (std::size_t k = 0; k < s.size(); ++k) {
    clean_run = s[k] ? clean_run + 1 : 0;
    if (clean_run < window_w) continue;
    const std::size_t first = k + 1 - window_w;
    for (std::size_t i = 0; i < window_w; ++i) window[i] = *s[first + i];
    const LineFit fit = fit_line_at_end(window);
    d.trend[k] = fit.value_at_end;
    d.slope[k] = fit.slope;
    d.fluctuation[k] = *s[k] - fit.value_at_end;
  }
  return d;
}

}  // namespace solarband
