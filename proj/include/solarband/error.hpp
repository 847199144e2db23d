#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace solarband {

/// Every failure the library reports carries one of these codes; the CLI
/// maps them onto exit statuses.
enum class ErrorCode {
  MalformedHeader,
  MalformedRow,
  NonMonotoneTimestamp,
  DuplicateTimestamp,
  NegativeIrradiance,
  NonMinuteAlignedTimestamp,
  EmptySeries,
  InvalidArgument,
  SeriesTooShort,
  TrackMismatch,
  NoDefinedRecords,
  UncalibratableWindow,
  DegenerateSample,
  SampleTooSmall,
  UnsupportedLevel,
  EmptyRange,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string_view module, const std::string& detail);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace solarband
