#include <doctest.h>

#include <cmath>
#include <random>

#include "solarband/decomposition.hpp"
#include "test_util.hpp"

using namespace solarband;
using namespace solarband::testing;

namespace {

// Plain normal equations on absolute abscissae, in long double.
long double oracle_trend(const IrradianceSeries& s, std::size_t k, std::size_t w) {
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t j = k + 1 - w; j <= k; ++j) {
    const long double x = static_cast<long double>(j);
    const long double y = *s[j];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const long double n = static_cast<long double>(w);
  const long double det = n * sxx - sx * sx;
  const long double slope = (n * sxy - sx * sy) / det;
  const long double intercept = (sy - slope * sx) / n;
  return intercept + slope * static_cast<long double>(k);
}

}  // namespace

TEST_CASE("extract_trend argument errors") {
  const auto s = series_of({1, 2, 3});
  CHECK(error_code_of([&] { extract_trend(s, 1); }) == ErrorCode::InvalidArgument);
  CHECK(error_code_of([&] { extract_trend(s, 4); }) == ErrorCode::SeriesTooShort);
}

TEST_CASE("constant series has a flat trend") {
  const auto s = series_from(300, [](std::size_t) { return 412.5; });
  const auto d = extract_trend(s, 120);
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k < 119) {
      CHECK_FALSE(d.trend[k].has_value());
      CHECK_FALSE(d.fluctuation[k].has_value());
      continue;
    }
    CHECK(*d.trend[k] == doctest::Approx(412.5).epsilon(1e-14));
    CHECK(std::fabs(*d.fluctuation[k]) < 1e-12);
    CHECK(std::fabs(*d.slope[k]) < 1e-13);
  }
}

TEST_CASE("an exact ramp is reproduced") {
  const auto s = series_from(400, [](std::size_t k) { return 20.0 + 1.75 * static_cast<double>(k); });
  const auto d = extract_trend(s, 60);
  for (std::size_t k = 59; k < s.size(); ++k) {
    CHECK(std::fabs(*d.trend[k] - *s[k]) < 1e-9);
    CHECK(std::fabs(*d.fluctuation[k]) < 1e-9);
    CHECK(std::fabs(*d.slope[k] - 1.75) < 1e-12);
  }
}

TEST_CASE("ramp plus noise matches the normal-equations oracle") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 25.0);
  const auto s = series_from(1000, [&](std::size_t k) { return std::max(0.0, 300.0 + 0.4 * k + noise(rng)); });
  for (const std::size_t w : {2u, 7u, 120u}) {
    const auto d = extract_trend(s, w);
    for (std::size_t k = w - 1; k < s.size(); ++k) {
      const long double expected = oracle_trend(s, k, w);
      CHECK(std::fabs(static_cast<long double>(*d.trend[k]) - expected) <= 1e-9L * std::fabs(expected));
    }
  }
}

TEST_CASE("windows containing a gap are undefined") {
  std::vector<Sample> v(50, 100.0);
  v[20] = std::nullopt;
  const auto d = extract_trend(IrradianceSeries(t0(), v), 5);
  for (std::size_t k = 0; k < 50; ++k) {
    const bool expected = (k >= 4 && k < 20) || k >= 25;
    CHECK(d.trend[k].has_value() == expected);
  }
}

TEST_CASE("additivity, causality, linearity and smoothing hold on random series") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1000.0);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n = 600;
    const std::size_t w = 30 + 10 * rep;
    std::vector<double> a(n), b(n);
    for (auto& x : a) x = u(rng);
    for (auto& x : b) x = u(rng);
    const auto sa = series_of(a);
    const auto da = extract_trend(sa, w);

    for (std::size_t k = w - 1; k < n; ++k) {
      CHECK(std::fabs(*da.trend[k] + *da.fluctuation[k] - a[k]) <= 1e-9);
    }

    // Perturbing the future never moves the past.
    const std::size_t cut = n / 2;
    std::vector<double> changed = a;
    for (std::size_t k = cut + 1; k < n; ++k) changed[k] = u(rng);
    const auto dc = extract_trend(series_of(changed), w);
    for (std::size_t k = 0; k <= cut; ++k) CHECK(dc.trend[k] == da.trend[k]);

    const double ca = 0.3, cb = 2.5;
    std::vector<double> mix(n);
    for (std::size_t k = 0; k < n; ++k) mix[k] = ca * a[k] + cb * b[k];
    const auto db = extract_trend(series_of(b), w);
    const auto dm = extract_trend(series_of(mix), w);
    for (std::size_t k = w - 1; k < n; ++k) {
      CHECK(std::fabs(*dm.trend[k] - (ca * *da.trend[k] + cb * *db.trend[k])) <= 1e-9);
    }

    // The fitted line leaves no more residual energy in its window than the window mean does.
    for (std::size_t k = w - 1; k < n; k += 37) {
      double mean = 0.0;
      for (std::size_t j = k + 1 - w; j <= k; ++j) mean += a[j];
      mean /= static_cast<double>(w);
      const double slope = *da.slope[k];
      double rss_line = 0.0, rss_mean = 0.0;
      for (std::size_t j = k + 1 - w; j <= k; ++j) {
        const double fit = *da.trend[k] - slope * static_cast<double>(k - j);
        rss_line += (a[j] - fit) * (a[j] - fit);
        rss_mean += (a[j] - mean) * (a[j] - mean);
      }
      CHECK(rss_line / w <= rss_mean / w + 1e-9);
    }
  }
}
