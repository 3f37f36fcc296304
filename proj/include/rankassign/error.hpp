#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rankassign {

enum class ErrorCode {
  ShapeMismatch,
  NonFiniteMisdetect,
  InvalidEntry,
  InfiniteEntry,
  OracleLimitExceeded,
  IoFailure,
  FormatError,
  MissingPredictions,
  ManifestMismatch,
  InvalidArgument,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can print a machine-readable error line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rankassign
