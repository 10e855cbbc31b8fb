#include "zeromode/error.hpp"

namespace zeromode {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonMonotoneBreakpoints: return "NonMonotoneBreakpoints";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::TrivialPotential: return "TrivialPotential";
    case ErrorCode::NotOneGap: return "NotOneGap";
    case ErrorCode::ZeroIntegral: return "ZeroIntegral";
    case ErrorCode::InfeasibleTriple: return "InfeasibleTriple";
    case ErrorCode::NonPositiveK: return "NonPositiveK";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::ScanStepTooCoarse: return "ScanStepTooCoarse";
    case ErrorCode::RegionTooSmall: return "RegionTooSmall";
    case ErrorCode::WindingMismatch: return "WindingMismatch";
    case ErrorCode::BoundaryRoot: return "BoundaryRoot";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::CriticalProduct: return "CriticalProduct";
    case ErrorCode::InsufficientRoots: return "InsufficientRoots";
    case ErrorCode::UnresolvedCell: return "UnresolvedCell";
    case ErrorCode::DegenerateEndpoint: return "DegenerateEndpoint";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownExample: return "UnknownExample";
  }
  return "Unknown";
}

bool Error::numerical() const noexcept {
  switch (code_) {
    case ErrorCode::StepUnderflow:
    case ErrorCode::ScanStepTooCoarse:
    case ErrorCode::WindingMismatch:
    case ErrorCode::BoundaryRoot:
    case ErrorCode::InsufficientRoots:
    case ErrorCode::UnresolvedCell:
      return true;
    default:
      return false;
  }
}

}  // namespace zeromode
