#include "solarband/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "solarband/bands.hpp"
#include "solarband/decomposition.hpp"
#include "solarband/error.hpp"
#include "solarband/forecaster.hpp"
#include "solarband/metrics.hpp"
#include "solarband/normality.hpp"
#include "solarband/plot.hpp"
#include "solarband/risk.hpp"
#include "solarband/synth.hpp"
#include "solarband/track_io.hpp"

namespace solarband::cli {
namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string input;
  std::string output;
  std::size_t window_w = kDefaultTrendWindow;
  std::size_t horizon_h = kDefaultHorizon;
  double eps_day = kDefaultEpsDay;
  double target = kDefaultTargetCoverage;
  std::size_t window_days = kDefaultWindowDays;
  std::size_t recal_every = kDefaultRecalEvery;
  double level = kDefaultLevel;
  std::uint64_t seed = 1;
  std::string from;
  std::string to;

  // synth
  int days = 1;
  std::string regime = "broken";
  double latitude = 48.69;
  int day_of_year = 152;
  double peak = 1000.0;
  int year = 2013;

  // forecast / bands
  std::string method = "trend";
  bool cb1 = false;
  std::optional<double> alpha;
  std::string alpha_history;

  // lilliefors-table
  std::size_t replicates = 100000;
};

struct Uncalibratable {};

void add_common_forecast_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--horizon", cfg.horizon_h, "Forecast horizon, minutes")
      ->capture_default_str()->check(CLI::PositiveNumber);
}

void add_band_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--eps-day", cfg.eps_day, "Daylight threshold, W/m2")
      ->capture_default_str()->check(CLI::NonNegativeNumber);
  app->add_option("--target", cfg.target, "Target coverage of CB2")
      ->capture_default_str()->check(CLI::Range(0.0, 1.0));
  app->add_option("--window-days", cfg.window_days, "Calibration lookback, days")
      ->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--recal-every", cfg.recal_every, "Recalibration period, minutes")
      ->capture_default_str()->check(CLI::PositiveNumber);
}

Cb2Config cb2_config(const RunConfig& cfg) {
  Cb2Config c;
  c.window_days = cfg.window_days;
  c.target = cfg.target;
  c.recal_every = cfg.recal_every;
  if (cfg.cb1) c.alpha_override = 1.0;
  if (cfg.alpha) c.alpha_override = cfg.alpha;
  return c;
}

// Each stage maps text to text so that `report` is literally the composition
// of the individual subcommands.
std::string stage_forecast(const std::string& series_csv, const RunConfig& cfg) {
  const IrradianceSeries s = ingest_csv(series_csv);
  if (cfg.method == "persistence") return emit_forecast_csv(forecast_persistence(s, cfg.horizon_h));
  const Decomposition d = extract_trend(s, cfg.window_w);
  return emit_forecast_csv(forecast_trend(s, d, cfg.horizon_h));
}

struct BandOutput {
  std::string band_csv;
  std::string history_csv;
  bool calibrated = false;
};

BandOutput stage_bands(const std::string& forecast_csv, const RunConfig& cfg) {
  const ForecastTrack f = ingest_forecast_csv(forecast_csv, cfg.horizon_h);
  const VolatilityTrack v = volatility(f);
  const DaylightMask mask = daylight_mask(f.realized, cfg.eps_day);
  const Cb2Config c = cb2_config(cfg);
  const BandTrack b = band_cb2(f, v, mask, c);
  BandOutput out{emit_band_csv(b), emit_alpha_history_csv(b.calibrations), c.alpha_override.has_value()};
  for (const auto& ev : b.calibrations) out.calibrated = out.calibrated || ev.alpha.has_value();
  return out;
}

std::vector<double> daylight_diff(const ForecastTrack& f, double eps_day) {
  const DaylightMask mask = daylight_mask(f.realized, eps_day);
  std::vector<double> diff;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (mask[k] && f.defined(k)) diff.push_back(*f.realized[k] - *f.predicted[k]);
  }
  return diff;
}

std::string stage_normtest(const std::string& input_csv, const RunConfig& cfg) {
  const std::vector<double> diff = input_csv.rfind("diff_wm2", 0) == 0
                                       ? ingest_diff_csv(input_csv)
                                       : daylight_diff(ingest_forecast_csv(input_csv, cfg.horizon_h), cfg.eps_day);
  std::vector<NormalityReport> reports;
  reports.push_back(jarque_bera(diff, cfg.level));
  // Plain KS against the sample's own mean/std: the threshold assumes known
  // parameters, so the result is flagged approximate.
  const Moments m = sample_moments(diff);
  const double sd = std::sqrt(m.variance * static_cast<double>(diff.size()) /
                              static_cast<double>(diff.size() - 1));
  if (!(sd > 0.0)) throw Error(ErrorCode::DegenerateSample, "normality", "kolmogorov_smirnov");
  NormalityReport ks = ks_normal(diff, cfg.level, m.mean, sd);
  ks.approximate = true;
  reports.push_back(ks);
  reports.push_back(lilliefors(diff, cfg.level));
  return emit_normality_csv(reports);
}

std::optional<Minute> optional_time(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_timestamp(text);
}

int cmd_synth(const RunConfig& cfg, std::ostream&) {
  SynthConfig sc;
  sc.latitude = cfg.latitude;
  sc.day_of_year = cfg.day_of_year;
  sc.days = cfg.days;
  sc.clear_sky_peak = cfg.peak;
  sc.cloud_regime = parse_regime(cfg.regime);
  sc.seed = cfg.seed;
  sc.year = cfg.year;
  write_text_file(cfg.output, emit_csv(generate(sc)));
  return kOk;
}

int cmd_forecast(const RunConfig& cfg, std::ostream&) {
  write_text_file(cfg.output, stage_forecast(read_text_file(cfg.input), cfg));
  return kOk;
}

int cmd_bands(const RunConfig& cfg, std::ostream& out) {
  const BandOutput b = stage_bands(read_text_file(cfg.input), cfg);
  if (!b.calibrated) throw Uncalibratable{};
  write_text_file(cfg.output, b.band_csv);
  if (cfg.alpha_history.empty()) {
    out << b.history_csv;
  } else {
    write_text_file(cfg.alpha_history, b.history_csv);
  }
  return kOk;
}

int cmd_normtest(const RunConfig& cfg, std::ostream& out) {
  const std::string csv = stage_normtest(read_text_file(cfg.input), cfg);
  if (cfg.output.empty()) {
    out << csv;
  } else {
    write_text_file(cfg.output, csv);
  }
  return kOk;
}

int cmd_report(const RunConfig& cfg, std::ostream& out) {
  const fs::path dir = cfg.output;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cli", "cannot create '" + dir.string() + "'");

  const std::string series_csv = read_text_file(cfg.input);
  const std::string forecast_csv = stage_forecast(series_csv, cfg);
  const BandOutput bands = stage_bands(forecast_csv, cfg);
  if (!bands.calibrated) throw Uncalibratable{};
  const std::string normtest_csv = stage_normtest(forecast_csv, cfg);

  const IrradianceSeries s = ingest_csv(series_csv);
  const ForecastTrack f = ingest_forecast_csv(forecast_csv, cfg.horizon_h);
  const VolatilityTrack v = volatility(f);
  const DaylightMask mask = daylight_mask(f.realized, cfg.eps_day);
  const BandTrack b = band_cb2(f, v, mask, cb2_config(cfg));
  const std::string score_csv = scorecard_csv(score(f, b, mask));

  write_text_file(dir / "forecast.csv", forecast_csv);
  write_text_file(dir / "bands.csv", bands.band_csv);
  write_text_file(dir / "alpha_history.csv", bands.history_csv);
  write_text_file(dir / "normtest.csv", normtest_csv);
  write_text_file(dir / "scorecard.csv", score_csv);

  PlotRequest monthly{PlotKind::Monthly, std::nullopt, std::nullopt, 50, cfg.eps_day,
                      "Irradiance (blue), prediction (red), confidence band (black dashed)"};
  emit_plot(s, &f, &b, monthly, dir / "monthly.svg");

  PlotRequest zoom = monthly;
  zoom.kind = PlotKind::Zoom;
  zoom.from = optional_time(cfg.from);
  zoom.to = optional_time(cfg.to);
  const Minute last = s.time_at(s.size() - 1);
  if (!zoom.to) zoom.to = last;
  if (!zoom.from) zoom.from = *zoom.to - 1439;
  emit_plot(s, &f, &b, zoom, dir / "zoom.svg");

  PlotRequest hist{PlotKind::Histogram, std::nullopt, std::nullopt, 50, cfg.eps_day,
                   "Forecast error distribution (blue) and fitted Gaussian (red)"};
  emit_plot(s, &f, nullptr, hist, dir / "histogram.svg");

  out << score_csv;
  return kOk;
}

int cmd_lilliefors_table(const RunConfig& cfg, std::ostream&) {
  LillieforsTableSpec spec;
  spec.seed = cfg.seed;
  spec.replicates = cfg.replicates;
  write_text_file(cfg.output, generate_lilliefors_table(spec).to_csv());
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Short-term solar irradiance forecasting with calibrated confidence bands", "solarband"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* synth = app.add_subcommand("synth", "Generate a synthetic minute-resolution irradiance CSV");
  synth->add_option("--output", cfg.output, "Output series CSV")->required();
  synth->add_option("--days", cfg.days, "Number of days")->capture_default_str();
  synth->add_option("--regime", cfg.regime, "clear | broken | overcast")
      ->capture_default_str()->check(CLI::IsMember({"clear", "broken", "overcast"}));
  synth->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  synth->add_option("--latitude", cfg.latitude, "Latitude, degrees")->capture_default_str();
  synth->add_option("--day-of-year", cfg.day_of_year, "First day of year (1-366)")->capture_default_str();
  synth->add_option("--peak", cfg.peak, "Clear-sky peak irradiance, W/m2")->capture_default_str();
  synth->add_option("--year", cfg.year, "Calendar year of the timestamps")->capture_default_str();

  auto* forecast = app.add_subcommand("forecast", "Series CSV -> forecast-track CSV");
  forecast->add_option("--input", cfg.input, "Series CSV")->required();
  forecast->add_option("--output", cfg.output, "Forecast-track CSV")->required();
  forecast->add_option("--window-w", cfg.window_w, "Trend window, minutes")
      ->capture_default_str()->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  forecast->add_option("--method", cfg.method, "trend | persistence")
      ->capture_default_str()->check(CLI::IsMember({"trend", "persistence"}));
  add_common_forecast_flags(forecast, cfg);

  auto* bands = app.add_subcommand("bands", "Forecast-track CSV -> band CSV; prints the alpha history");
  bands->add_option("--input", cfg.input, "Forecast-track CSV")->required();
  bands->add_option("--output", cfg.output, "Band CSV")->required();
  bands->add_flag("--cb1", cfg.cb1, "Emit CB1 (alpha fixed at 1)");
  bands->add_option("--alpha", cfg.alpha, "Fixed alpha instead of calibration")->check(CLI::PositiveNumber);
  bands->add_option("--alpha-history", cfg.alpha_history, "Write the alpha history here instead of stdout");
  add_common_forecast_flags(bands, cfg);
  add_band_flags(bands, cfg);

  auto* normtest = app.add_subcommand("normtest", "Normality battery on forecast errors");
  normtest->add_option("--input", cfg.input, "Forecast-track CSV or a `diff_wm2` column CSV")->required();
  normtest->add_option("--output", cfg.output, "Report CSV (stdout if omitted)");
  normtest->add_option("--level", cfg.level, "Significance level")
      ->capture_default_str()->check(CLI::Range(0.0, 1.0));
  normtest->add_option("--eps-day", cfg.eps_day, "Daylight threshold, W/m2")
      ->capture_default_str()->check(CLI::NonNegativeNumber);
  add_common_forecast_flags(normtest, cfg);

  auto* report = app.add_subcommand("report", "Full pipeline: scorecard CSV, stage CSVs and SVG plots");
  report->add_option("--input", cfg.input, "Series CSV")->required();
  report->add_option("--output", cfg.output, "Output directory")->required();
  report->add_option("--window-w", cfg.window_w, "Trend window, minutes")
      ->capture_default_str()->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  report->add_option("--level", cfg.level, "Significance level")
      ->capture_default_str()->check(CLI::Range(0.0, 1.0));
  report->add_option("--from", cfg.from, "Zoom start, YYYY-MM-DDTHH:MM:00Z");
  report->add_option("--to", cfg.to, "Zoom end, YYYY-MM-DDTHH:MM:00Z");
  add_common_forecast_flags(report, cfg);
  add_band_flags(report, cfg);

  auto* table = app.add_subcommand("lilliefors-table", "Regenerate the Lilliefors null critical-value table");
  table->add_option("--output", cfg.output, "Table CSV")->required();
  table->add_option("--seed", cfg.seed, "Random seed")->default_val(LillieforsTableSpec{}.seed);
  table->add_option("--replicates", cfg.replicates, "Null replicates per size bucket")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "solarband: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (synth->parsed()) return cmd_synth(cfg, out);
    if (forecast->parsed()) return cmd_forecast(cfg, out);
    if (bands->parsed()) return cmd_bands(cfg, out);
    if (normtest->parsed()) return cmd_normtest(cfg, out);
    if (report->parsed()) return cmd_report(cfg, out);
    if (table->parsed()) return cmd_lilliefors_table(cfg, out);
  } catch (const Uncalibratable&) {
    err << "solarband: bands: uncalibratable window (no calibration window had eligible records)\n";
    return kUncalibratable;
  } catch (const Error& e) {
    err << "solarband: " << e.what() << "\n";
    if (e.code() == ErrorCode::Io) return kIoError;
    if (e.code() == ErrorCode::UncalibratableWindow) return kUncalibratable;
    if (e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::UnsupportedLevel) return kUsageError;
    return kDataError;
  }
  return kUsageError;
}

}  // namespace solarband::cli
