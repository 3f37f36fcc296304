#include "rankassign/error.hpp"

namespace rankassign {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonFiniteMisdetect: return "NonFiniteMisdetect";
    case ErrorCode::InvalidEntry: return "InvalidEntry";
    case ErrorCode::InfiniteEntry: return "InfiniteEntry";
    case ErrorCode::OracleLimitExceeded: return "OracleLimitExceeded";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::MissingPredictions: return "MissingPredictions";
    case ErrorCode::ManifestMismatch: return "ManifestMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace rankassign
