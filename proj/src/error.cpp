#include "coword/error.hpp"

namespace coword {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigError:   return "CONFIG_ERROR";
    case ErrorCode::kBadConfig:     return "BAD_CONFIG";
    case ErrorCode::kIoError:       return "IO_ERROR";
    case ErrorCode::kMalformedRow:  return "MALFORMED_ROW";
    case ErrorCode::kDuplicateId:   return "DUPLICATE_ID";
    case ErrorCode::kMissingField:  return "MISSING_FIELD";
    case ErrorCode::kBadYear:       return "BAD_YEAR";
    case ErrorCode::kEmptyCorpus:   return "EMPTY_CORPUS";
    case ErrorCode::kBadDf:         return "BAD_DF";
    case ErrorCode::kZeroVector:    return "ZERO_VECTOR";
    case ErrorCode::kTooFewDocs:    return "TOO_FEW_DOCS";
    case ErrorCode::kEmptyCluster:  return "EMPTY_CLUSTER";
    case ErrorCode::kCoverageGap:   return "COVERAGE_GAP";
    case ErrorCode::kUnknownDoc:    return "UNKNOWN_DOC";
    case ErrorCode::kEmptyTable:    return "EMPTY_TABLE";
    case ErrorCode::kStageMismatch: return "STAGE_MISMATCH";
    case ErrorCode::kInternal:      return "INTERNAL";
  }
  return "UNKNOWN";
}

int error_code_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigError:
    case ErrorCode::kBadConfig:
      return 2;
    case ErrorCode::kInternal:
      return 4;
    default:
      return 3;
  }
}

}  // namespace coword
