#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mellinium {

enum class ErrorCode {
  InvalidArgument,
  StripViolation,
  QuadratureDivergence,
  NormalizationPole,
  InconsistentDeclaration,
  InsufficientDecay,
  SlowContourDecay,
  ContourDependence,
  AnalyticityFailure,
  EmptyResultStrip,
  SideConditionViolation,
  EmptyStripIntersection,
  DivergentStage,
  ResidueInstability,
  NotPositiveDefinite,
  SpectrumCollision,
  ConvergenceDomain,
  ZeroDeterminant,
  CoincidentPoints,
  DivergentRoute,
  PoleAtOne,
};

/// Validation errors reject malformed input; numerical errors come from a
/// computation that was well posed but could not be carried out.
enum class ErrorKind { Validation, Numerical };

std::string_view error_name(ErrorCode code) noexcept;
ErrorKind error_kind(ErrorCode code) noexcept;

class MellinError : public std::runtime_error {
 public:
  MellinError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }
  ErrorKind kind() const noexcept { return error_kind(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw MellinError(code, what);
}

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace mellinium
