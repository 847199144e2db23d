#include "solarband/bands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "solarband/error.hpp"

namespace solarband {
namespace {

constexpr std::string_view kModule = "bands";

void check_aligned(const ForecastTrack& f, const VolatilityTrack& v) {
  if (f.size() != v.size() || f.start != v.start || f.horizon_h != v.horizon_h) {
    throw Error(ErrorCode::TrackMismatch, kModule, "forecast and volatility tracks are misaligned");
  }
}

void check_mask(const ForecastTrack& f, const DaylightMask& mask) {
  if (mask.size() != f.size()) {
    throw Error(ErrorCode::TrackMismatch, kModule, "daylight mask length differs from track");
  }
}

bool meets_target(std::size_t covered, std::size_t n, double target) {
  return static_cast<double>(covered) / static_cast<double>(n) >= target;
}

BandTrack build_band(const ForecastTrack& f, const VolatilityTrack& v, std::vector<double> alpha) {
  BandTrack b;
  b.start = f.start;
  b.lower.resize(f.size());
  b.upper.resize(f.size());
  for (std::size_t t = 0; t < f.size(); ++t) {
    if (!f.predicted[t] || !v.vol_pred[t]) continue;
    const Frontiers fr = band_frontiers(*f.predicted[t], *v.vol_pred[t], alpha[t]);
    b.lower[t] = fr.lower;
    b.upper[t] = fr.upper;
  }
  b.alpha = std::move(alpha);
  return b;
}

}  // namespace

Frontiers band_frontiers(double predicted, double vol_pred, double alpha) noexcept {
  const double half = alpha * vol_pred;
  return {std::max(0.0, predicted - half), predicted + half};
}

BandTrack band_cb1(const ForecastTrack& f, const VolatilityTrack& v) {
  check_aligned(f, v);
  return build_band(f, v, std::vector<double>(f.size(), 1.0));
}

std::vector<std::size_t> eligible_records(const ForecastTrack& f, const VolatilityTrack& v,
                                          const DaylightMask& mask, std::size_t from, std::size_t to) {
  check_aligned(f, v);
  check_mask(f, mask);
  std::vector<std::size_t> out;
  for (std::size_t k = from; k < std::min(to, f.size()); ++k) {
    if (mask[k] && f.defined(k) && v.vol_pred[k] && *v.vol_pred[k] > 0.0) out.push_back(k);
  }
  return out;
}

std::size_t count_covered(const ForecastTrack& f, const VolatilityTrack& v,
                          std::span<const std::size_t> records, double alpha) {
  std::size_t covered = 0;
  for (const std::size_t k : records) {
    const Frontiers fr = band_frontiers(*f.predicted[k], *v.vol_pred[k], alpha);
    if (inside_band(*f.realized[k], fr)) ++covered;
  }
  return covered;
}

double covering_ratio(double predicted, double vol_pred, double realized) {
  if (!(vol_pred > 0.0) || !(realized >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, kModule, "covering ratio needs vol_pred > 0 and realized >= 0");
  }
  const auto covers = [&](double a) { return inside_band(realized, band_frontiers(predicted, vol_pred, a)); };
  const double ratio = std::fabs(realized - predicted) / vol_pred;
  if (covers(ratio)) return ratio;

  // Rounding left the record just outside its own band: bracket upwards, then
  // bisect down to adjacent doubles.
  double lo = ratio;
  double hi = ratio;
  for (double step = std::max(ratio * 1e-15, std::numeric_limits<double>::denorm_min()); !covers(hi); step *= 2.0) {
    lo = hi;
    hi = ratio + step;
  }
  while (true) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    (covers(mid) ? hi : lo) = mid;
  }
  return hi;
}

double calibrate_alpha(const ForecastTrack& f, const VolatilityTrack& v, const DaylightMask& mask,
                       Minute t, std::size_t window_days, double target) {
  if (!(target > 0.0 && target < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, kModule, "target coverage must lie in (0, 1)");
  }
  if (window_days < 1) throw Error(ErrorCode::InvalidArgument, kModule, "window_days must be >= 1");

  const std::int64_t end = t - f.start;
  const std::int64_t begin = end - static_cast<std::int64_t>(window_days) * 1440;
  const auto clip = [&](std::int64_t k) {
    return static_cast<std::size_t>(std::clamp<std::int64_t>(k, 0, static_cast<std::int64_t>(f.size())));
  };
  const auto records = eligible_records(f, v, mask, clip(begin), clip(end));
  if (records.empty()) {
    throw Error(ErrorCode::UncalibratableWindow, kModule,
                "no eligible records before " + format_timestamp(t));
  }

  std::vector<double> candidates;
  candidates.reserve(records.size());
  for (const std::size_t k : records) {
    candidates.push_back(covering_ratio(*f.predicted[k], *v.vol_pred[k], *f.realized[k]));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // Every candidate covers its own record, so the ceil(target*n)-th one meets
  // the target; coverage is monotone in alpha, so bisection finds the first.
  const auto first_ok = std::partition_point(candidates.begin(), candidates.end(), [&](double a) {
    return !meets_target(count_covered(f, v, records, a), records.size(), target);
  });
  if (*first_ok <= 0.0) {
    throw Error(ErrorCode::UncalibratableWindow, kModule, "target met by a zero-width band");
  }
  return *first_ok;
}

BandTrack band_cb2(const ForecastTrack& f, const VolatilityTrack& v, const DaylightMask& mask,
                   const Cb2Config& cfg) {
  check_aligned(f, v);
  check_mask(f, mask);
  if (cfg.recal_every < 1) throw Error(ErrorCode::InvalidArgument, kModule, "recal_every must be >= 1");
  if (cfg.alpha_override && !(*cfg.alpha_override > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, kModule, "alpha override must be > 0");
  }

  std::vector<double> alpha(f.size(), cfg.alpha_override.value_or(1.0));
  std::vector<CalibrationEvent> history;
  if (!cfg.alpha_override) {
    const auto period = static_cast<std::int64_t>(cfg.recal_every);
    double in_force = 1.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
      const Minute t = f.time_at(k);
      if (((t.count % period) + period) % period == 0) {
        CalibrationEvent ev{t, std::nullopt, 0};
        try {
          ev.alpha = calibrate_alpha(f, v, mask, t, cfg.window_days, cfg.target);
          in_force = *ev.alpha;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::UncalibratableWindow) throw;
        }
        const auto end = static_cast<std::size_t>(k);
        const auto begin = end > cfg.window_days * 1440 ? end - cfg.window_days * 1440 : 0;
        ev.n_eligible = eligible_records(f, v, mask, begin, end).size();
        history.push_back(ev);
      }
      alpha[k] = in_force;
    }
  }

  BandTrack b = build_band(f, v, std::move(alpha));
  b.window_days = cfg.window_days;
  b.target_coverage = cfg.target;
  b.calibrations = std::move(history);
  return b;
}

}  // namespace solarband
