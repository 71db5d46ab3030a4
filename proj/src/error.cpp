#include "accex/error.hpp"

namespace accex {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MismatchedGeometry: return "MismatchedGeometry";
    case ErrorCode::FractionalBinWidth: return "FractionalBinWidth";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::TruncatedRecord: return "TruncatedRecord";
    case ErrorCode::UnknownTag: return "UnknownTag";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::OverlappingSymbols: return "OverlappingSymbols";
    case ErrorCode::EmptyTable: return "EmptyTable";
    case ErrorCode::SchemaVersionUnsupported: return "SchemaVersionUnsupported";
    case ErrorCode::NoSymbols: return "NoSymbols";
    case ErrorCode::CycleInCondensation: return "CycleInCondensation";
    case ErrorCode::InconsistentCallGroups: return "InconsistentCallGroups";
    case ErrorCode::IdOutOfRange: return "IdOutOfRange";
    case ErrorCode::ValuesLengthMismatch: return "ValuesLengthMismatch";
    case ErrorCode::NegativeReplacement: return "NegativeReplacement";
    case ErrorCode::ArcNotFound: return "ArcNotFound";
    case ErrorCode::UnknownTarget: return "UnknownTarget";
    case ErrorCode::ZeroSelfTime: return "ZeroSelfTime";
    case ErrorCode::SpecError: return "SpecError";
    case ErrorCode::CycleUnsupported: return "CycleUnsupported";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace accex
