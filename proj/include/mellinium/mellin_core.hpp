#pragma once

#include <functional>
#include <vector>

#include "mellinium/mellin_function.hpp"
#include "mellinium/normalization.hpp"
#include "mellinium/quadrature.hpp"
#include "mellinium/strip.hpp"

namespace mellinium {

struct TransformValue {
  Complex value{};
  Complex alpha{};
  FundamentalStrip strip{0.0, 1.0};
  Normalization normalization = Normalization::haar();
  double abs_error_estimate = 0.0;
  /// Set when the value comes from an analytic continuation (contour or
  /// limit) rather than the defining integral inside the strip.
  bool continued = false;
};

/// m(alpha) * integral of f(x) x^{alpha-1} over (0, inf).
TransformValue forward_mellin(const MellinFunction& f, Complex alpha,
                              const Normalization& norm = Normalization::haar(),
                              const QuadratureConfig& cfg = {});

/// Un-normalized integral with its quadrature record; alpha must be inside
/// the strip. Useful where only the raw integral is needed.
QuadratureResult mellin_integral(const MellinFunction::Eval& f, Complex alpha,
                                 const QuadratureConfig& cfg, double center = 0.0);

inline constexpr double kStripMargin = 0.05;

/// Log-spaced probe grid from 10^lo to 10^hi.
std::vector<double> default_probe_grid(double lo_decade = -8.0, double hi_decade = 8.0,
                                       int per_decade = 4);

/// Fits the power-law orders of |f| at both ends of the probe grid and returns
/// the fitted strip shrunk by kStripMargin on each finite side. Throws
/// InconsistentDeclaration when the declared strip of f is wider than the fit
/// allows, InsufficientDecay when no nonempty power-law strip is found.
FundamentalStrip infer_strip(const MellinFunction& f, const std::vector<double>& probe_grid);
FundamentalStrip infer_strip(const MellinFunction::Eval& f, const std::vector<double>& probe_grid);

/// (1 / 2 pi i) integral of x^{-alpha} F(alpha) along Re alpha = c.
Complex inverse_mellin(const ComplexMap& transform, double c, double x,
                       const QuadratureConfig& cfg = {});

struct HankelContourSpec {
  double radius = 1.0;
  /// Half-gap between the two rays.
  double offset = 0.25;
  double ray_length = 80.0;

  void validate() const;
};

/// m(alpha) times the integral of f(z) (-z)^alpha dz / z along a Hankel
/// contour that comes in from +inf above the axis, circles 0 counterclockwise
/// and returns below it, with the principal branch of (-z)^alpha. With the
/// gamma-contour normalization this equals the Gamma-normalized real-line
/// transform wherever the latter exists. The computation is repeated with the
/// radius and offset halved; disagreement raises ContourDependence.
TransformValue hankel_mellin(const MellinFunction& f, Complex alpha,
                             const HankelContourSpec& contour = {},
                             const Normalization& norm = Normalization::gamma_contour(),
                             const QuadratureConfig& cfg = {});

}  // namespace mellinium
