#include "solarband/series.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "solarband/error.hpp"

namespace solarband {
namespace {

constexpr std::string_view kModule = "series_core";
constexpr std::string_view kHeader = "timestamp,ghi_wm2";

bool parse_fixed_uint(std::string_view text, unsigned& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size() &&
         std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Minute make_minute(int year, unsigned month, unsigned day, unsigned hour, unsigned minute) {
  using namespace std::chrono;
  const year_month_day ymd{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
  if (!ymd.ok() || hour > 23 || minute > 59) {
    throw Error(ErrorCode::InvalidArgument, kModule, "invalid calendar date");
  }
  const auto d = sys_days{ymd}.time_since_epoch().count();
  return Minute{static_cast<std::int64_t>(d) * 1440 + hour * 60 + minute};
}

Minute parse_timestamp(std::string_view text) {
  // YYYY-MM-DDTHH:MM:SSZ
  if (text.size() != 20 || text[4] != '-' || text[7] != '-' || text[10] != 'T' ||
      text[13] != ':' || text[16] != ':' || text[19] != 'Z') {
    throw Error(ErrorCode::MalformedRow, kModule, "bad timestamp '" + std::string(text) + "'");
  }
  unsigned y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  if (!parse_fixed_uint(text.substr(0, 4), y) || !parse_fixed_uint(text.substr(5, 2), mo) ||
      !parse_fixed_uint(text.substr(8, 2), d) || !parse_fixed_uint(text.substr(11, 2), h) ||
      !parse_fixed_uint(text.substr(14, 2), mi) || !parse_fixed_uint(text.substr(17, 2), s)) {
    throw Error(ErrorCode::MalformedRow, kModule, "bad timestamp '" + std::string(text) + "'");
  }
  const std::chrono::year_month_day ymd{std::chrono::year{static_cast<int>(y)},
                                        std::chrono::month{mo}, std::chrono::day{d}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 59) {
    throw Error(ErrorCode::MalformedRow, kModule, "bad timestamp '" + std::string(text) + "'");
  }
  if (s != 0) {
    throw Error(ErrorCode::NonMinuteAlignedTimestamp, kModule, std::string(text));
  }
  return make_minute(static_cast<int>(y), mo, d, h, mi);
}

std::string format_timestamp(Minute t) {
  using namespace std::chrono;
  std::int64_t days_count = t.count / 1440;
  std::int64_t rem = t.count % 1440;
  if (rem < 0) {
    rem += 1440;
    --days_count;
  }
  const year_month_day ymd{sys_days{days{days_count}}};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:00Z", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(rem / 60), static_cast<int>(rem % 60));
  return buf;
}

std::string format_decimal(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::optional<double> parse_decimal(std::string_view field) {
  if (field.empty()) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

IrradianceSeries::IrradianceSeries(Minute start, std::vector<Sample> values)
    : start_(start), values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorCode::EmptySeries, kModule, "");
  for (std::size_t k = 0; k < values_.size(); ++k) {
    const auto& v = values_[k];
    if (!v) continue;
    if (!std::isfinite(*v)) {
      throw Error(ErrorCode::MalformedRow, kModule, "non-finite value at index " + std::to_string(k));
    }
    if (*v < 0.0) {
      throw Error(ErrorCode::NegativeIrradiance, kModule, "index " + std::to_string(k));
    }
  }
}

std::size_t IrradianceSeries::gap_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [](const Sample& v) { return !v; }));
}

DaylightMask daylight_mask(std::span<const std::optional<double>> values, double eps_day) {
  if (!(eps_day >= 0.0)) throw Error(ErrorCode::InvalidArgument, kModule, "eps_day must be >= 0");
  DaylightMask mask;
  mask.flags.reserve(values.size());
  for (const auto& v : values) mask.flags.push_back(v.has_value() && *v > eps_day);
  return mask;
}

DaylightMask daylight_mask(const IrradianceSeries& s, double eps_day) {
  return daylight_mask(s.values(), eps_day);
}

IrradianceSeries ingest_csv(std::string_view text) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  auto next_line = [&](std::string_view& line) {
    if (pos >= text.size()) return false;
    const auto end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      line = text.substr(pos);
      pos = text.size();
    } else {
      line = text.substr(pos, end - pos);
      pos = end + 1;
    }
    ++line_no;
    return true;
  };

  std::string_view line;
  if (!next_line(line) || line != kHeader) {
    throw Error(ErrorCode::MalformedHeader, kModule, "expected '" + std::string(kHeader) + "'");
  }

  std::optional<Minute> start;
  std::optional<Minute> last;
  std::vector<Sample> values;
  while (next_line(line)) {
    const auto where = "line " + std::to_string(line_no);
    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw Error(ErrorCode::MalformedRow, kModule, where);
    }
    const Minute t = parse_timestamp(line.substr(0, comma));
    const auto value = parse_decimal(line.substr(comma + 1));
    if (!value) throw Error(ErrorCode::MalformedRow, kModule, where);
    if (*value < 0.0) throw Error(ErrorCode::NegativeIrradiance, kModule, where);
    if (last) {
      if (t == *last) throw Error(ErrorCode::DuplicateTimestamp, kModule, where);
      if (t < *last) throw Error(ErrorCode::NonMonotoneTimestamp, kModule, where);
      values.resize(values.size() + static_cast<std::size_t>(t - *last - 1));
    } else {
      start = t;
    }
    values.emplace_back(*value);
    last = t;
  }
  if (!start) throw Error(ErrorCode::EmptySeries, kModule, "no data rows");
  return IrradianceSeries(*start, std::move(values));
}

std::string emit_csv(const IrradianceSeries& s) {
  std::string out(kHeader);
  out += '\n';
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!s[k]) continue;
    out += format_timestamp(s.time_at(k));
    out += ',';
    out += format_decimal(*s[k]);
    out += '\n';
  }
  return out;
}

}  // namespace solarband
