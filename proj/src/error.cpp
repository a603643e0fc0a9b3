#include "momext/error.hpp"

namespace momext {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotCommuting: return "NotCommuting";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::RealShift: return "RealShift";
    case ErrorCode::EigenvalueOne: return "EigenvalueOne";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::IncompleteTable: return "IncompleteTable";
    case ErrorCode::ConditionBFailed: return "ConditionBFailed";
    case ErrorCode::NotFlat: return "NotFlat";
    case ErrorCode::InvalidShape: return "InvalidShape";
    case ErrorCode::Singular: return "Singular";
  }
  return "Unknown";
}

}  // namespace momext
