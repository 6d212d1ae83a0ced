#ifndef COWORD_ERROR_HPP
#define COWORD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace coword {

enum class ErrorCode {
  kConfigError,    // bad config file: syntax, unknown key, missing referenced file
  kBadConfig,      // parameter values out of range (e.g. ngram bounds)
  kIoError,        // unreadable/unwritable file
  kMalformedRow,   // unparseable CSV record or JSONL line
  kDuplicateId,
  kMissingField,
  kBadYear,
  kEmptyCorpus,
  kBadDf,
  kZeroVector,
  kTooFewDocs,
  kEmptyCluster,
  kCoverageGap,
  kUnknownDoc,
  kEmptyTable,
  kStageMismatch,  // stage artifact schema/config does not match this pipeline
  kInternal,       // broken internal invariant
};

// Stable symbolic name, e.g. "DUPLICATE_ID". Exposed through the C API.
const char* error_code_name(ErrorCode code);

// Process exit status class: 2 config, 3 data, 4 internal.
int error_code_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }
  const char* name() const { return error_code_name(code_); }
  int status() const { return error_code_status(code_); }

 private:
  ErrorCode code_;
};

}  // namespace coword

#endif  // COWORD_ERROR_HPP
