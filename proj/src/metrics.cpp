#include "solarband/metrics.hpp"

#include <cmath>

#include "solarband/error.hpp"

namespace solarband {

ScoreCard score(const ForecastTrack& f, const BandTrack& b, const DaylightMask& mask) {
  if (b.size() != f.size() || b.start != f.start || mask.size() != f.size()) {
    throw Error(ErrorCode::TrackMismatch, "metrics_report", "forecast, band and mask are misaligned");
  }
  double sq = 0.0, abs_sum = 0.0, realized_sum = 0.0, width_sum = 0.0;
  std::size_t covered = 0, n = 0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (!mask[k] || !f.defined(k) || !b.lower[k] || !b.upper[k]) continue;
    const double realized = *f.realized[k];
    const double err = realized - *f.predicted[k];
    sq += err * err;
    abs_sum += std::fabs(err);
    realized_sum += realized;
    width_sum += *b.upper[k] - *b.lower[k];
    if (inside_band(realized, {*b.lower[k], *b.upper[k]})) ++covered;
    ++n;
  }
  if (n == 0) throw Error(ErrorCode::NoDefinedRecords, "metrics_report", "nothing to score");
  const auto dn = static_cast<double>(n);
  ScoreCard card;
  card.rmse = std::sqrt(sq / dn);
  card.mae = abs_sum / dn;
  card.nrmse = card.rmse / (realized_sum / dn);
  card.coverage = static_cast<double>(covered) / dn;
  card.mean_band_width = width_sum / dn;
  card.n_scored = n;
  return card;
}

std::string scorecard_csv(const ScoreCard& card) {
  return "rmse,mae,nrmse,coverage,mean_band_width,n_scored\n" + format_decimal(card.rmse) + "," +
         format_decimal(card.mae) + "," + format_decimal(card.nrmse) + "," +
         format_decimal(card.coverage) + "," + format_decimal(card.mean_band_width) + "," +
         std::to_string(card.n_scored) + "\n";
}

}  // namespace solarband
