#include "majo/error.hpp"

namespace majo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeMass: return "NegativeMass";
    case ErrorCode::NegativeValueOnInfiniteSpace: return "NegativeValueOnInfiniteSpace";
    case ErrorCode::MassExceedsTotal: return "MassExceedsTotal";
    case ErrorCode::InfiniteArithmetic: return "InfiniteArithmetic";
    case ErrorCode::SOutOfRange: return "SOutOfRange";
    case ErrorCode::DivergentHinge: return "DivergentHinge";
    case ErrorCode::MeasureMismatch: return "MeasureMismatch";
    case ErrorCode::SignednessViolation: return "SignednessViolation";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::InvalidFamily: return "InvalidFamily";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::PartitionMisaligned: return "PartitionMisaligned";
    case ErrorCode::NotStochastic: return "NotStochastic";
    case ErrorCode::TailMassInfimumZero: return "TailMassInfimumZero";
    case ErrorCode::UnequalMassesUnsupported: return "UnequalMassesUnsupported";
    case ErrorCode::NotMajorized: return "NotMajorized";
    case ErrorCode::DeltaOutOfRange: return "DeltaOutOfRange";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace majo
