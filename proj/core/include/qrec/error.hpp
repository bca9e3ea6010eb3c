#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qrec {

enum class ErrorCode {
  OffsetTooSmall,
  InconsistentInitialValues,
  MissingCoefficient,
  IllFoundedRecurrence,
  ParseError,
  IndexRangeViolation,
  SpecialCaseViolation,
  RepresentationHasOffset,
  UnsupportedLabel,
  UnsupportedShift,
  DimensionMismatch,
  Underdetermined,
  Inconsistent,
  ClusteringAmbiguous,
  NoSeparation,
  NotSimpleEigenvalue,
  NearPole,
  DepthExceeded,
  UnknownCatalogEntry,
  UnsupportedPrecision,
  PrefixInsufficient,
};

std::string_view error_name(ErrorCode code);

// Every domain failure carries a stable identifier the CLI prints verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qrec
