#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace accex {

enum class ErrorCode {
  MismatchedGeometry,
  FractionalBinWidth,
  IndexOutOfRange,
  BadMagic,
  UnsupportedVersion,
  TruncatedRecord,
  UnknownTag,
  ParseError,
  OverlappingSymbols,
  EmptyTable,
  SchemaVersionUnsupported,
  NoSymbols,
  CycleInCondensation,
  InconsistentCallGroups,
  IdOutOfRange,
  ValuesLengthMismatch,
  NegativeReplacement,
  ArcNotFound,
  UnknownTarget,
  ZeroSelfTime,
  SpecError,
  CycleUnsupported,
  IoError,
};

// Stable machine-readable name, used in JSON error bodies.
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace accex
