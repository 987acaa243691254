#include "mellinium/errors.hpp"

namespace mellinium {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::StripViolation: return "StripViolation";
    case ErrorCode::QuadratureDivergence: return "QuadratureDivergence";
    case ErrorCode::NormalizationPole: return "NormalizationPole";
    case ErrorCode::InconsistentDeclaration: return "InconsistentDeclaration";
    case ErrorCode::InsufficientDecay: return "InsufficientDecay";
    case ErrorCode::SlowContourDecay: return "SlowContourDecay";
    case ErrorCode::ContourDependence: return "ContourDependence";
    case ErrorCode::AnalyticityFailure: return "AnalyticityFailure";
    case ErrorCode::EmptyResultStrip: return "EmptyResultStrip";
    case ErrorCode::SideConditionViolation: return "SideConditionViolation";
    case ErrorCode::EmptyStripIntersection: return "EmptyStripIntersection";
    case ErrorCode::DivergentStage: return "DivergentStage";
    case ErrorCode::ResidueInstability: return "ResidueInstability";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::SpectrumCollision: return "SpectrumCollision";
    case ErrorCode::ConvergenceDomain: return "ConvergenceDomain";
    case ErrorCode::ZeroDeterminant: return "ZeroDeterminant";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::DivergentRoute: return "DivergentRoute";
    case ErrorCode::PoleAtOne: return "PoleAtOne";
  }
  return "UnknownError";
}

ErrorKind error_kind(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::CoincidentPoints:
    case ErrorCode::NotPositiveDefinite:
    case ErrorCode::DivergentRoute:
      return ErrorKind::Validation;
    default:
      return ErrorKind::Numerical;
  }
}

}  // namespace mellinium
