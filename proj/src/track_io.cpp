#include "solarband/track_io.hpp"

#include "solarband/error.hpp"

namespace solarband {
namespace {

constexpr std::string_view kModule = "cli";
constexpr std::string_view kForecastHeader = "timestamp,predicted_wm2,realized_wm2";

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    fields.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return fields;
}

std::string optional_field(const std::optional<double>& v) { return v ? format_decimal(*v) : std::string(); }

std::optional<double> parse_optional(std::string_view field, const std::string& where) {
  if (field.empty()) return std::nullopt;
  const auto v = parse_decimal(field);
  if (!v) throw Error(ErrorCode::MalformedRow, kModule, where);
  if (*v < 0.0) throw Error(ErrorCode::NegativeIrradiance, kModule, where);
  return v;
}

}  // namespace

std::string emit_forecast_csv(const ForecastTrack& f) {
  std::string out(kForecastHeader);
  out += '\n';
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (!f.predicted[k] && !f.realized[k]) continue;
    out += format_timestamp(f.time_at(k)) + "," + optional_field(f.predicted[k]) + "," +
           optional_field(f.realized[k]) + "\n";
  }
  return out;
}

ForecastTrack ingest_forecast_csv(std::string_view text, std::size_t horizon_h) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines.front() != kForecastHeader) {
    throw Error(ErrorCode::MalformedHeader, kModule, "expected '" + std::string(kForecastHeader) + "'");
  }
  ForecastTrack f;
  f.horizon_h = horizon_h;
  std::optional<Minute> last;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = "forecast line " + std::to_string(i + 1);
    const auto fields = split_fields(lines[i]);
    if (fields.size() != 3) throw Error(ErrorCode::MalformedRow, kModule, where);
    const Minute t = parse_timestamp(fields[0]);
    if (last) {
      if (t == *last) throw Error(ErrorCode::DuplicateTimestamp, kModule, where);
      if (t < *last) throw Error(ErrorCode::NonMonotoneTimestamp, kModule, where);
      const auto skipped = static_cast<std::size_t>(t - *last - 1);
      f.predicted.resize(f.predicted.size() + skipped);
      f.realized.resize(f.realized.size() + skipped);
    } else {
      f.start = t;
    }
    f.predicted.push_back(parse_optional(fields[1], where));
    f.realized.push_back(parse_optional(fields[2], where));
    last = t;
  }
  if (!last) throw Error(ErrorCode::EmptySeries, kModule, "forecast track has no rows");
  return f;
}

std::string emit_band_csv(const BandTrack& b) {
  std::string out = "timestamp,lower_wm2,upper_wm2,alpha\n";
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (!b.lower[k] || !b.upper[k]) continue;
    out += format_timestamp(b.start + static_cast<std::int64_t>(k)) + "," + format_decimal(*b.lower[k]) +
           "," + format_decimal(*b.upper[k]) + "," + format_decimal(b.alpha[k]) + "\n";
  }
  return out;
}

std::string emit_alpha_history_csv(std::span<const CalibrationEvent> events) {
  std::string out = "timestamp,alpha,n_eligible\n";
  for (const auto& ev : events) {
    out += format_timestamp(ev.time) + "," + optional_field(ev.alpha) + "," + std::to_string(ev.n_eligible) +
           "\n";
  }
  return out;
}

std::string emit_normality_csv(std::span<const NormalityReport> reports) {
  std::string out = "test,n,statistic,threshold,level,reject,sample_mean,sample_std,approximate\n";
  for (const auto& r : reports) {
    out += r.test_name + "," + std::to_string(r.n) + "," + format_decimal(r.statistic) + "," +
           format_decimal(r.threshold) + "," + format_decimal(r.level) + "," + (r.reject ? "true" : "false") +
           "," + format_decimal(r.sample_mean) + "," + format_decimal(r.sample_std) + "," +
           (r.approximate ? "true" : "false") + "\n";
  }
  return out;
}

std::vector<double> ingest_diff_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines.front() != "diff_wm2") {
    throw Error(ErrorCode::MalformedHeader, kModule, "expected 'diff_wm2'");
  }
  std::vector<double> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto v = parse_decimal(lines[i]);
    if (!v) throw Error(ErrorCode::MalformedRow, kModule, "diff line " + std::to_string(i + 1));
    out.push_back(*v);
  }
  return out;
}

}  // namespace solarband
