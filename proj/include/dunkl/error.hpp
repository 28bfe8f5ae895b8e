#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dunkl {

/// Failure categories raised by the library. Every numerical failure is
/// reported through one of these codes instead of a NaN result.
enum class ErrorCode {
  NonPositiveLambda,
  BadResolution,
  ArgumentTooLarge,
  AsymmetricGrid,
  BoundaryPoint,
  TruncationTooTight,
  ZeroFunction,
  DegenerateArguments,
  InterpolationOutOfRange,
  NonPositiveY,
  EmptyCone,
  DiagonalPoint,
  NonConvergentPV,
  NonConvergentBoundary,
  InfeasibleAtom,
  QuadratureUnstable,
  PreconditionViolated,
  InsideExcludedRegion,
  InvalidConfig,
  SuiteFailure,
  IoFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dunkl
