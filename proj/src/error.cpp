#include "polars/error.hpp"

namespace polars {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kZeroVariance: return "ZeroVariance";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kInvalidSample: return "InvalidSample";
    case ErrorCode::kNegativeRadius: return "NegativeRadius";
    case ErrorCode::kFlavorMismatch: return "FlavorMismatch";
    case ErrorCode::kLabelMismatch: return "LabelMismatch";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kModelCapExceeded: return "ModelCapExceeded";
    case ErrorCode::kTooFewModels: return "TooFewModels";
    case ErrorCode::kInvalidInterval: return "InvalidInterval";
    case ErrorCode::kInvalidRect: return "InvalidRect";
    case ErrorCode::kUnknownModelId: return "UnknownModelId";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kTooFewVersions: return "TooFewVersions";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kMissingReference: return "MissingReference";
    case ErrorCode::kDuplicateHeader: return "DuplicateHeader";
    case ErrorCode::kTooManyModels: return "TooManyModels";
    case ErrorCode::kInconsistentModels: return "InconsistentModels";
    case ErrorCode::kUnknownColumn: return "UnknownColumn";
    case ErrorCode::kThemeCapacityExceeded: return "ThemeCapacityExceeded";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kUnknownDataset: return "UnknownDataset";
    case ErrorCode::kDatasetUnavailable: return "DatasetUnavailable";
  }
  return "Unknown";
}

}  // namespace polars
