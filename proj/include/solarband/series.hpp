#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace solarband {

/// Minutes since 1970-01-01T00:00Z. All timestamps are UTC.
struct Minute {
  std::int64_t count = 0;

  friend constexpr auto operator<=>(Minute, Minute) = default;
  constexpr Minute operator+(std::int64_t m) const { return {count + m}; }
  constexpr Minute operator-(std::int64_t m) const { return {count - m}; }
  constexpr std::int64_t operator-(Minute other) const { return count - other.count; }
};

/// Parses `YYYY-MM-DDTHH:MM:SSZ`. Throws NonMinuteAlignedTimestamp when the
/// seconds field is not `00` and MalformedRow for anything else unparsable.
Minute parse_timestamp(std::string_view text);
std::string format_timestamp(Minute t);
Minute make_minute(int year, unsigned month, unsigned day, unsigned hour = 0, unsigned minute = 0);

/// A sample is either a finite irradiance or a gap.
using Sample = std::optional<double>;
using Track = std::vector<std::optional<double>>;

/// Uniform one-minute series. Sample k is at start() + k minutes.
class IrradianceSeries {
 public:
  static constexpr std::int64_t kCadenceSeconds = 60;

  /// Throws EmptySeries / NegativeIrradiance / MalformedRow on invariant violations.
  IrradianceSeries(Minute start, std::vector<Sample> values);

  [[nodiscard]] Minute start() const noexcept { return start_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] std::span<const Sample> values() const noexcept { return values_; }
  [[nodiscard]] const Sample& operator[](std::size_t k) const { return values_[k]; }
  [[nodiscard]] Minute time_at(std::size_t k) const {
    return start_ + static_cast<std::int64_t>(k);
  }
  [[nodiscard]] std::size_t gap_count() const noexcept;

  friend bool operator==(const IrradianceSeries&, const IrradianceSeries&) = default;

 private:
  Minute start_;
  std::vector<Sample> values_;
};

struct DaylightMask {
  std::vector<bool> flags;

  [[nodiscard]] std::size_t size() const noexcept { return flags.size(); }
  [[nodiscard]] bool operator[](std::size_t k) const { return flags[k]; }
  friend bool operator==(const DaylightMask&, const DaylightMask&) = default;
};

inline constexpr double kDefaultEpsDay = 5.0;

/// flag[k] is true iff sample k is present and strictly above eps_day.
DaylightMask daylight_mask(const IrradianceSeries& s, double eps_day = kDefaultEpsDay);
/// Same rule applied to a raw track (e.g. the realized column of a forecast).
DaylightMask daylight_mask(std::span<const std::optional<double>> values, double eps_day);

/// CSV contract: header `timestamp,ghi_wm2`, rows `YYYY-MM-DDTHH:MM:00Z,<decimal>`,
/// LF line ends, gap rows omitted.
IrradianceSeries ingest_csv(std::string_view text);
std::string emit_csv(const IrradianceSeries& s);

/// Shortest decimal text that parses back to the identical double.
std::string format_decimal(double v);
/// Strict decimal parse of the whole field; nullopt if not a finite number.
std::optional<double> parse_decimal(std::string_view field);

}  // namespace solarband
