#include "solarband/error.hpp"

namespace solarband {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedHeader: return "malformed header";
    case ErrorCode::MalformedRow: return "malformed row";
    case ErrorCode::NonMonotoneTimestamp: return "non-monotone timestamps";
    case ErrorCode::DuplicateTimestamp: return "duplicate timestamps";
    case ErrorCode::NegativeIrradiance: return "negative irradiance";
    case ErrorCode::NonMinuteAlignedTimestamp: return "non-minute-aligned timestamp";
    case ErrorCode::EmptySeries: return "empty series";
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::SeriesTooShort: return "series shorter than window";
    case ErrorCode::TrackMismatch: return "track mismatch";
    case ErrorCode::NoDefinedRecords: return "no defined records";
    case ErrorCode::UncalibratableWindow: return "uncalibratable window";
    case ErrorCode::DegenerateSample: return "degenerate sample";
    case ErrorCode::SampleTooSmall: return "sample too small";
    case ErrorCode::UnsupportedLevel: return "unsupported level";
    case ErrorCode::EmptyRange: return "empty range";
    case ErrorCode::Io: return "i/o error";
  }
  return "unknown error";
}

Error::Error(ErrorCode code, std::string_view module, const std::string& detail)
    : std::runtime_error(std::string(module) + ": " + std::string(to_string(code)) +
                         (detail.empty() ? std::string() : " (" + detail + ")")),
      code_(code) {}

}  // namespace solarband
