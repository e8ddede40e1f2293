#pragma once

#include <stdexcept>
#include <string>

namespace ait {

// Stable error kinds. The CLI maps these onto exit codes, so the numbering
// is part of the public contract.
enum class ErrorKind {
  kMalformedCode,
  kOperandOutOfRange,
  kResourceLimit,
  kFingerprintMismatch,
  kCorruptLedger,
  kInsufficientBudget,
  kUndiscoveredPrefix,
  kBoundaryAmbiguity,
  kSearchBudgetExceeded,
  kOracleDisagreement,
  kNonIncreasingSchedule,
  kInvalidStream,
  kInvalidArgument,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ait
