#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polars {

enum class ErrorCode {
  kLengthMismatch,
  kZeroVariance,
  kEmptyInput,
  kInvalidSample,
  kNegativeRadius,
  kFlavorMismatch,
  kLabelMismatch,
  kInvalidConfig,
  kModelCapExceeded,
  kTooFewModels,
  kInvalidInterval,
  kInvalidRect,
  kUnknownModelId,
  kVersionMismatch,
  kTooFewVersions,
  kParseError,
  kMissingReference,
  kDuplicateHeader,
  kTooManyModels,
  kInconsistentModels,
  kUnknownColumn,
  kThemeCapacityExceeded,
  kIoError,
  kUnknownDataset,
  kDatasetUnavailable,
};

// Stable machine-readable name, used in API error bodies and CLI messages.
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the CSV loaders; carries the offending cell position (0-based data
// row, 0-based column). row == -1 means the header row.
class ParseError : public Error {
 public:
  ParseError(long row, long col, const std::string& message)
      : Error(ErrorCode::kParseError, message), row_(row), col_(col) {}

  long row() const noexcept { return row_; }
  long col() const noexcept { return col_; }

 private:
  long row_;
  long col_;
};

}  // namespace polars
