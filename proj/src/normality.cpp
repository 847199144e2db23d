#include "solarband/normality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "solarband/error.hpp"
#include "solarband/series.hpp"

namespace solarband {

extern const char* const kEmbeddedLillieforsTable;

namespace {

constexpr std::string_view kModule = "normality";

void check_level(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, kModule, "level must lie in (0, 1)");
  }
}

void check_sample(std::span<const double> x) {
  if (x.size() < kMinNormalitySample) {
    throw Error(ErrorCode::SampleTooSmall, kModule,
                "n = " + std::to_string(x.size()) + " < " + std::to_string(kMinNormalitySample));
  }
  for (const double v : x) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, kModule, "non-finite sample value");
  }
}

double mean_of(std::span<const double> x) {
  double s = 0.0;
  for (const double v : x) s += v;
  return s / static_cast<double>(x.size());
}

// (n-1) standard deviation.
double sd_of(std::span<const double> x, double mean) {
  double ss = 0.0;
  for (const double v : x) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

// Sorts `z` in place and returns the KS distance to the standard normal.
double ks_standard_sorted(std::vector<double>& z) {
  std::sort(z.begin(), z.end());
  const auto n = static_cast<double>(z.size());
  double d = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double f = normal_cdf(z[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

bool same_level(double a, double b) { return std::fabs(a - b) < 1e-12; }

}  // namespace

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) noexcept {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double chi_square2_critical(double level) {
  check_level(level);
  // chi-square(2) survival is exp(-x/2).
  return -2.0 * std::log(level);
}

double kolmogorov_survival(double c) noexcept {
  if (c <= 0.0) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * c * c);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double kolmogorov_critical(double level) {
  check_level(level);
  double lo = 0.1;
  double hi = 10.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (kolmogorov_survival(mid) > level) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Moments sample_moments(std::span<const double> x) {
  const auto n = static_cast<double>(x.size());
  const double mean = mean_of(x);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (const double v : x) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (!(m2 > 0.0)) return {mean, 0.0, 0.0, 0.0};
  return {mean, m2, m3 / std::pow(m2, 1.5), m4 / (m2 * m2) - 3.0};
}

NormalityReport jarque_bera(std::span<const double> x, double level) {
  check_level(level);
  check_sample(x);
  const Moments m = sample_moments(x);
  if (!(m.variance > 0.0)) throw Error(ErrorCode::DegenerateSample, kModule, "jarque_bera");
  const auto n = static_cast<double>(x.size());
  NormalityReport r;
  r.test_name = "jarque_bera";
  r.n = x.size();
  r.statistic = n / 6.0 * (m.skewness * m.skewness + m.excess_kurtosis * m.excess_kurtosis / 4.0);
  r.threshold = chi_square2_critical(level);
  r.level = level;
  r.reject = r.statistic > r.threshold;
  r.sample_mean = m.mean;
  r.sample_std = std::sqrt(m.variance);
  return r;
}

double ks_statistic(std::span<const double> x, double mean, double sd) {
  if (!(sd > 0.0)) throw Error(ErrorCode::InvalidArgument, kModule, "reference sd must be > 0");
  std::vector<double> z(x.begin(), x.end());
  for (double& v : z) v = (v - mean) / sd;
  return ks_standard_sorted(z);
}

NormalityReport ks_normal(std::span<const double> x, double level, double mean, double sd) {
  check_level(level);
  check_sample(x);
  const double sample_mean = mean_of(x);
  const double sample_sd = sd_of(x, sample_mean);
  if (!(sample_sd > 0.0)) throw Error(ErrorCode::DegenerateSample, kModule, "kolmogorov_smirnov");
  NormalityReport r;
  r.test_name = "kolmogorov_smirnov";
  r.n = x.size();
  r.statistic = ks_statistic(x, mean, sd);
  r.threshold = kolmogorov_critical(level) / std::sqrt(static_cast<double>(x.size()));
  r.level = level;
  r.reject = r.statistic > r.threshold;
  r.sample_mean = mean;
  r.sample_std = sd;
  return r;
}

double lilliefors_statistic(std::span<const double> x) {
  const double mean = mean_of(x);
  const double sd = sd_of(x, mean);
  if (!(sd > 0.0)) throw Error(ErrorCode::DegenerateSample, kModule, "lilliefors");
  std::vector<double> z(x.begin(), x.end());
  for (double& v : z) v = (v - mean) / sd;
  return ks_standard_sorted(z);
}

LillieforsTable::LillieforsTable(std::vector<Row> rows) : rows_(std::move(rows)) {
  for (const Row& r : rows_) {
    if (r.n < kMinNormalitySample || !(r.level > 0.0 && r.level < 1.0) || !(r.critical > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, kModule, "invalid Lilliefors table row");
    }
  }
  std::sort(rows_.begin(), rows_.end(), [](const Row& a, const Row& b) {
    return a.level != b.level ? a.level < b.level : a.n < b.n;
  });
}

LillieforsTable LillieforsTable::from_csv(std::string_view text) {
  std::vector<Row> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "n,level,critical") {
    throw Error(ErrorCode::MalformedHeader, kModule, "expected 'n,level,critical'");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw Error(ErrorCode::MalformedRow, kModule, line);
    }
    const auto n = parse_decimal(std::string_view(line).substr(0, c1));
    const auto level = parse_decimal(std::string_view(line).substr(c1 + 1, c2 - c1 - 1));
    const auto crit = parse_decimal(std::string_view(line).substr(c2 + 1));
    if (!n || !level || !crit || *n != std::floor(*n) || *n < 0) {
      throw Error(ErrorCode::MalformedRow, kModule, line);
    }
    rows.push_back({static_cast<std::size_t>(*n), *level, *crit});
  }
  return LillieforsTable(std::move(rows));
}

std::string LillieforsTable::to_csv() const {
  std::string out = "n,level,critical\n";
  for (const Row& r : rows_) {
    out += std::to_string(r.n) + "," + format_decimal(r.level) + "," + format_decimal(r.critical) + "\n";
  }
  return out;
}

double LillieforsTable::critical(std::size_t n, double level) const {
  std::vector<Row> buckets;
  std::copy_if(rows_.begin(), rows_.end(), std::back_inserter(buckets),
               [&](const Row& r) { return same_level(r.level, level); });
  if (buckets.empty()) {
    throw Error(ErrorCode::UnsupportedLevel, kModule,
                "no Lilliefors critical values for level " + format_decimal(level));
  }
  if (n < buckets.front().n) {
    throw Error(ErrorCode::SampleTooSmall, kModule, "below smallest Lilliefors bucket");
  }
  const auto scaled = [](const Row& r) { return std::sqrt(static_cast<double>(r.n)) * r.critical; };
  const double root_n = std::sqrt(static_cast<double>(n));
  if (n >= buckets.back().n) return scaled(buckets.back()) / root_n;
  const auto hi = std::find_if(buckets.begin(), buckets.end(), [&](const Row& r) { return r.n >= n; });
  if (hi->n == n) return hi->critical;
  const auto lo = std::prev(hi);
  const double u = 1.0 / root_n;
  const double u_lo = 1.0 / std::sqrt(static_cast<double>(lo->n));
  const double u_hi = 1.0 / std::sqrt(static_cast<double>(hi->n));
  const double w = (u - u_lo) / (u_hi - u_lo);
  return ((1.0 - w) * scaled(*lo) + w * scaled(*hi)) / root_n;
}

LillieforsTable generate_lilliefors_table(const LillieforsTableSpec& spec) {
  if (spec.replicates < 100) throw Error(ErrorCode::InvalidArgument, kModule, "too few replicates");
  for (const double level : spec.levels) check_level(level);
  std::vector<LillieforsTable::Row> rows;
  std::vector<double> stats(spec.replicates);
  for (const std::size_t n : spec.sizes) {
    if (n < kMinNormalitySample) throw Error(ErrorCode::InvalidArgument, kModule, "bucket below 8");
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(n)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss;
    std::vector<double> sample(n);
    for (double& stat : stats) {
      for (double& v : sample) v = gauss(rng);
      stat = lilliefors_statistic(sample);
    }
    std::sort(stats.begin(), stats.end());
    for (const double level : spec.levels) {
      const auto rank = static_cast<std::size_t>(
          std::ceil((1.0 - level) * static_cast<double>(spec.replicates)));
      rows.push_back({n, level, stats[std::clamp<std::size_t>(rank, 1, stats.size()) - 1]});
    }
  }
  return LillieforsTable(std::move(rows));
}

const LillieforsTable& default_lilliefors_table() {
  static const LillieforsTable table = [] {
    const std::string_view text = kEmbeddedLillieforsTable;
    if (text.empty()) {
      throw Error(ErrorCode::UnsupportedLevel, kModule,
                  "no Lilliefors table was embedded at build time; run `solarband lilliefors-table`");
    }
    return LillieforsTable::from_csv(text);
  }();
  return table;
}

NormalityReport lilliefors(std::span<const double> x, double level) {
  return lilliefors(x, level, default_lilliefors_table());
}

NormalityReport lilliefors(std::span<const double> x, double level, const LillieforsTable& table) {
  check_level(level);
  check_sample(x);
  const double mean = mean_of(x);
  const double sd = sd_of(x, mean);
  if (!(sd > 0.0)) throw Error(ErrorCode::DegenerateSample, kModule, "lilliefors");
  NormalityReport r;
  r.test_name = "lilliefors";
  r.n = x.size();
  r.statistic = lilliefors_statistic(x);
  r.threshold = table.critical(x.size(), level);
  r.level = level;
  r.reject = r.statistic > r.threshold;
  r.sample_mean = mean;
  r.sample_std = sd;
  return r;
}

Histogram diff_histogram(std::span<const double> x, std::size_t bins, std::size_t curve_points) {
  if (x.empty() || bins < 1) {
    throw Error(ErrorCode::InvalidArgument, kModule, "histogram needs n >= 1 and bins >= 1");
  }
  const auto [min_it, max_it] = std::minmax_element(x.begin(), x.end());
  const double lo = *min_it;
  const double hi = *max_it;
  Histogram h;
  h.lo = lo;
  h.width = (hi - lo) / static_cast<double>(bins);
  h.counts.assign(bins, 0);
  for (const double v : x) {
    std::size_t b = 0;
    if (h.width > 0.0) {
      b = std::min(bins - 1, static_cast<std::size_t>((v - lo) / h.width));
    }
    ++h.counts[b];
  }
  h.mean = mean_of(x);
  h.sd = x.size() > 1 ? sd_of(x, h.mean) : 0.0;
  if (h.sd > 0.0 && h.width > 0.0 && curve_points >= 2) {
    const double scale = static_cast<double>(x.size()) * h.width / h.sd;
    for (std::size_t i = 0; i < curve_points; ++i) {
      const double xi = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(curve_points - 1);
      h.curve.emplace_back(xi, scale * normal_pdf((xi - h.mean) / h.sd));
    }
  }
  return h;
}

}  // namespace solarband
