#include "dunkl/error.hpp"

namespace dunkl {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveLambda: return "NonPositiveLambda";
    case ErrorCode::BadResolution: return "BadResolution";
    case ErrorCode::ArgumentTooLarge: return "ArgumentTooLarge";
    case ErrorCode::AsymmetricGrid: return "AsymmetricGrid";
    case ErrorCode::BoundaryPoint: return "BoundaryPoint";
    case ErrorCode::TruncationTooTight: return "TruncationTooTight";
    case ErrorCode::ZeroFunction: return "ZeroFunction";
    case ErrorCode::DegenerateArguments: return "DegenerateArguments";
    case ErrorCode::InterpolationOutOfRange: return "InterpolationOutOfRange";
    case ErrorCode::NonPositiveY: return "NonPositiveY";
    case ErrorCode::EmptyCone: return "EmptyCone";
    case ErrorCode::DiagonalPoint: return "DiagonalPoint";
    case ErrorCode::NonConvergentPV: return "NonConvergentPV";
    case ErrorCode::NonConvergentBoundary: return "NonConvergentBoundary";
    case ErrorCode::InfeasibleAtom: return "InfeasibleAtom";
    case ErrorCode::QuadratureUnstable: return "QuadratureUnstable";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::InsideExcludedRegion: return "InsideExcludedRegion";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::SuiteFailure: return "SuiteFailure";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

}  // namespace dunkl
