#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace majo {

enum class ErrorCode {
  NegativeMass,
  NegativeValueOnInfiniteSpace,
  MassExceedsTotal,
  InfiniteArithmetic,
  SOutOfRange,
  DivergentHinge,
  MeasureMismatch,
  SignednessViolation,
  EmptyFamily,
  InvalidFamily,
  InternalInconsistency,
  NegativeEntry,
  DimensionMismatch,
  PartitionMisaligned,
  NotStochastic,
  TailMassInfimumZero,
  UnequalMassesUnsupported,
  NotMajorized,
  DeltaOutOfRange,
  ParseError,
};

std::string_view to_string(ErrorCode code);

// Every failure the library reports carries one of the codes above; the CLI
// maps InternalInconsistency to exit 3 and everything else to exit 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace majo
