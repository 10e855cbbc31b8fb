#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zeromode {

enum class ErrorCode {
  NonMonotoneBreakpoints,
  LengthMismatch,
  TrivialPotential,
  NotOneGap,
  ZeroIntegral,
  InfeasibleTriple,
  NonPositiveK,
  StepUnderflow,
  ScanStepTooCoarse,
  RegionTooSmall,
  WindingMismatch,
  BoundaryRoot,
  OutOfDomain,
  NotCoprime,
  CriticalProduct,
  InsufficientRoots,
  UnresolvedCell,
  DegenerateEndpoint,
  InvalidArgument,
  ParseError,
  UnknownExample,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (notably the CLI) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for failures of the numerics rather than of the inputs.
  bool numerical() const noexcept;

 private:
  ErrorCode code_;
};

}  // namespace zeromode
