#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "solarband/cli.hpp"
#include "solarband/plot.hpp"
#include "solarband/series.hpp"
#include "test_util.hpp"

using namespace solarband;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "solarband");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "solarband_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("synth is deterministic") {
  const auto dir = scratch("synth");
  const std::vector<std::string> base{"synth", "--days", "3", "--regime", "clear", "--seed", "1", "--output"};
  auto a = base, b = base;
  a.push_back((dir / "a.csv").string());
  b.push_back((dir / "b.csv").string());
  REQUIRE(run_cli(a).code == 0);
  REQUIRE(run_cli(b).code == 0);
  const auto text = read_text_file(dir / "a.csv");
  CHECK(text == read_text_file(dir / "b.csv"));
  CHECK(ingest_csv(text).size() == 3 * 1440);
}

TEST_CASE("normtest on a Gaussian fixture prints one line per test") {
  const auto dir = scratch("normtest");
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 40.0);
  std::string csv = "diff_wm2\n";
  for (int i = 0; i < 800; ++i) csv += format_decimal(g(rng)) + "\n";
  write_text_file(dir / "diff.csv", csv);
  const auto r = run_cli({"normtest", "--input", (dir / "diff.csv").string(), "--level", "0.05"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "test,n,statistic,threshold,level,reject,sample_mean,sample_std,approximate");
  std::vector<std::string> names;
  while (std::getline(lines, line)) {
    const auto first = line.find(',');
    names.push_back(line.substr(0, first));
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    REQUIRE(fields.size() == 9);
    CHECK((fields[5] == "true" || fields[5] == "false"));
    CHECK(fields[1] == "800");
  }
  CHECK(names == std::vector<std::string>{"jarque_bera", "kolmogorov_smirnov", "lilliefors"});
}

TEST_CASE("report equals the composition of the individual stages") {
  const auto dir = scratch("compose");
  const auto series = (dir / "series.csv").string();
  REQUIRE(run_cli({"synth", "--days", "5", "--regime", "broken", "--seed", "3", "--output", series}).code == 0);
  REQUIRE(run_cli({"forecast", "--input", series, "--output", (dir / "forecast.csv").string()}).code == 0);
  const auto bands = run_cli({"bands", "--input", (dir / "forecast.csv").string(), "--output",
                              (dir / "bands.csv").string()});
  REQUIRE(bands.code == 0);
  CHECK(bands.out.rfind("timestamp,alpha,n_eligible\n", 0) == 0);
  CHECK(line_count(bands.out) == 1 + 5);
  const auto norm = run_cli({"normtest", "--input", (dir / "forecast.csv").string()});
  REQUIRE(norm.code == 0);

  const auto out = dir / "report";
  const auto rep = run_cli({"report", "--input", series, "--output", out.string()});
  REQUIRE(rep.code == 0);
  CHECK(read_text_file(out / "forecast.csv") == read_text_file(dir / "forecast.csv"));
  CHECK(read_text_file(out / "bands.csv") == read_text_file(dir / "bands.csv"));
  CHECK(read_text_file(out / "alpha_history.csv") == bands.out);
  CHECK(read_text_file(out / "normtest.csv") == norm.out);
  CHECK(read_text_file(out / "scorecard.csv") == rep.out);
  for (const char* svg : {"monthly.svg", "zoom.svg", "histogram.svg"}) {
    CHECK(read_text_file(out / svg).rfind("<?xml", 0) == 0);
  }
}

TEST_CASE("band CSV contract and CB1 flag") {
  const auto dir = scratch("cb1");
  const auto series = (dir / "series.csv").string();
  REQUIRE(run_cli({"synth", "--days", "4", "--output", series}).code == 0);
  REQUIRE(run_cli({"forecast", "--input", series, "--output", (dir / "f.csv").string(), "--window-w", "90"}).code == 0);
  REQUIRE(run_cli({"bands", "--cb1", "--input", (dir / "f.csv").string(), "--output", (dir / "b.csv").string(),
                   "--alpha-history", (dir / "h.csv").string()})
              .code == 0);
  const auto text = read_text_file(dir / "b.csv");
  CHECK(text.rfind("timestamp,lower_wm2,upper_wm2,alpha\n", 0) == 0);
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) CHECK(line.substr(line.rfind(',') + 1) == "1");
  CHECK(read_text_file(dir / "h.csv") == "timestamp,alpha,n_eligible\n");
}

TEST_CASE("exit codes") {
  const auto dir = scratch("codes");
  CHECK(run_cli({}).code == cli::kUsageError);
  CHECK(run_cli({"frobnicate"}).code == cli::kUsageError);
  CHECK(run_cli({"synth", "--output", (dir / "x.csv").string(), "--bogus"}).code == cli::kUsageError);
  CHECK(run_cli({"forecast", "--output", (dir / "x.csv").string()}).code == cli::kUsageError);
  CHECK(run_cli({"--help"}).code == cli::kOk);

  const auto missing = run_cli({"forecast", "--input", (dir / "nope.csv").string(), "--output", (dir / "f.csv").string()});
  CHECK(missing.code == cli::kIoError);

  write_text_file(dir / "bad.csv", "timestamp,ghi_wm2\n2013-06-01T00:00:00Z,-1\n");
  const auto bad = run_cli({"forecast", "--input", (dir / "bad.csv").string(), "--output", (dir / "f.csv").string()});
  CHECK(bad.code == cli::kDataError);
  CHECK(bad.err.find("series_core: negative irradiance") != std::string::npos);

  // Every realized value sits below the daylight threshold: nothing to calibrate on.
  REQUIRE(run_cli({"synth", "--days", "4", "--output", (dir / "s.csv").string()}).code == 0);
  REQUIRE(run_cli({"forecast", "--input", (dir / "s.csv").string(), "--output", (dir / "f.csv").string()}).code == 0);
  const auto dark = run_cli({"bands", "--input", (dir / "f.csv").string(), "--output", (dir / "b.csv").string(),
                             "--eps-day", "5000"});
  CHECK(dark.code == cli::kUncalibratable);
  CHECK(dark.err.find("uncalibratable window") != std::string::npos);
}

TEST_CASE("lilliefors-table subcommand is reproducible") {
  const auto dir = scratch("table");
  REQUIRE(run_cli({"lilliefors-table", "--replicates", "200", "--output", (dir / "a.csv").string()}).code == 0);
  REQUIRE(run_cli({"lilliefors-table", "--replicates", "200", "--output", (dir / "b.csv").string()}).code == 0);
  CHECK(read_text_file(dir / "a.csv") == read_text_file(dir / "b.csv"));
  CHECK(read_text_file(dir / "a.csv").rfind("n,level,critical\n", 0) == 0);
}
