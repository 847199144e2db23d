#pragma once

#include <iosfwd>

namespace solarband::cli {

enum ExitCode : int {
  kOk = 0,
  kDataError = 1,
  kUsageError = 2,
  kUncalibratable = 3,
  kIoError = 4,
};

/// Entry point of the `solarband` executable. Subcommands: synth, forecast,
/// bands, normtest, report, lilliefors-table.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace solarband::cli
