#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace solarband {

inline constexpr double kDefaultLevel = 0.05;
inline constexpr std::size_t kMinNormalitySample = 8;

struct NormalityReport {
  std::string test_name;
  std::size_t n = 0;
  double statistic = 0.0;
  double threshold = 0.0;
  double level = kDefaultLevel;
  bool reject = false;
  double sample_mean = 0.0;
  double sample_std = 0.0;
  /// True when the reference parameters were estimated from the sample but
  /// the threshold assumes they were known.
  bool approximate = false;
};

double normal_cdf(double x) noexcept;
double normal_pdf(double x) noexcept;

/// Upper-tail quantile of chi-square with 2 degrees of freedom: P(X > q) = level.
double chi_square2_critical(double level);

/// Asymptotic Kolmogorov survival function 2 * sum_k (-1)^(k-1) exp(-2 k^2 c^2).
double kolmogorov_survival(double c) noexcept;
/// c such that kolmogorov_survival(c) == level.
double kolmogorov_critical(double level);

/// Sample skewness and excess kurtosis, 1/n moment normalization.
struct Moments {
  double mean;
  double variance;  // 1/n
  double skewness;
  double excess_kurtosis;
};
Moments sample_moments(std::span<const double> x);

/// JB = n/6 (S^2 + K^2/4), rejected above the chi-square(2) critical value.
NormalityReport jarque_bera(std::span<const double> x, double level = kDefaultLevel);

/// sup |F_n - F| against N(mean, sd) with the given (not estimated) parameters.
double ks_statistic(std::span<const double> x, double mean, double sd);
NormalityReport ks_normal(std::span<const double> x, double level = kDefaultLevel, double mean = 0.0,
                          double sd = 1.0);

/// KS distance against N(sample mean, sample sd) with the (n-1) sd estimate.
double lilliefors_statistic(std::span<const double> x);

/// Monte-Carlo null critical values of the Lilliefors statistic, keyed by
/// sample size bucket and significance level. Reject when D > critical.
class LillieforsTable {
 public:
  struct Row {
    std::size_t n;
    double level;
    double critical;
  };

  explicit LillieforsTable(std::vector<Row> rows);

  /// Parses the `n,level,critical` CSV form.
  static LillieforsTable from_csv(std::string_view text);
  std::string to_csv() const;

  /// Linear interpolation of sqrt(n)*critical in 1/sqrt(n) between buckets;
  /// beyond the largest bucket sqrt(n)*critical is held constant.
  double critical(std::size_t n, double level) const;

  [[nodiscard]] const std::vector<Row>& rows() const noexcept { return rows_; }

 private:
  std::vector<Row> rows_;  // sorted by (level, n)
};

struct LillieforsTableSpec {
  std::vector<std::size_t> sizes{8,  9,   10,  12,  15,  20,  25,  30,   40,   50,  75,
                                 100, 150, 200, 300, 400, 500, 750, 1000, 1500, 2000};
  std::vector<double> levels{0.01, 0.025, 0.05, 0.10, 0.15, 0.20};
  std::size_t replicates = 100000;
  std::uint64_t seed = 20130101;
};

/// Deterministic for a given spec: each size bucket draws from its own
/// generator seeded by (seed, n).
LillieforsTable generate_lilliefors_table(const LillieforsTableSpec& spec);

/// Table compiled into the library from data/lilliefors_table.csv.
const LillieforsTable& default_lilliefors_table();

NormalityReport lilliefors(std::span<const double> x, double level = kDefaultLevel);
NormalityReport lilliefors(std::span<const double> x, double level, const LillieforsTable& table);

struct Histogram {
  double lo = 0.0;
  double width = 0.0;
  std::vector<std::size_t> counts;
  double mean = 0.0;
  double sd = 0.0;  // (n-1) estimate
  /// Normal density with the sample mean/sd, scaled by n * width so it reads
  /// in counts per bin. Empty when sd == 0.
  std::vector<std::pair<double, double>> curve;
};

Histogram diff_histogram(std::span<const double> x, std::size_t bins, std::size_t curve_points = 201);

}  // namespace solarband
