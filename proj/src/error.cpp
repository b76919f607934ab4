#include "indefsqrt/error.hpp"

namespace indefsqrt {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::GramianNotHermitian: return "GramianNotHermitian";
    case ErrorCode::GramianSingular: return "GramianSingular";
    case ErrorCode::NotHNonnegative: return "NotHNonnegative";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::NonZeroEigenvalue: return "NonZeroEigenvalue";
    case ErrorCode::InvalidWeyr: return "InvalidWeyr";
    case ErrorCode::UnsupportedEntry: return "UnsupportedEntry";
    case ErrorCode::PairingMismatch: return "PairingMismatch";
    case ErrorCode::ConstraintViolation: return "ConstraintViolation";
    case ErrorCode::ModeViolation: return "ModeViolation";
    case ErrorCode::ExistenceViolation: return "ExistenceViolation";
    case ErrorCode::NoHnnRoot: return "NoHnnRoot";
    case ErrorCode::ClusterAmbiguity: return "ClusterAmbiguity";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace indefsqrt
