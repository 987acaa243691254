#pragma once

#include <cstddef>
#include <functional>
#include <utility>

#include "mellinium/strip.hpp"

namespace mellinium {

using RealIntegrand = std::function<Complex(double)>;
using ComplexMap = std::function<Complex(Complex)>;

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_levels = 12;
  /// Truncation of the log variable t = log x. The window roughly matches the
  /// exponent range of a double, so e^t stays a normal number.
  std::pair<double, double> truncation_bounds{-700.0, 700.0};

  /// Throws InvalidArgument on non-positive tolerances or t_min >= 0 >= t_max.
  void validate() const;

  /// Same config with tolerances scaled (used for inner integrals).
  QuadratureConfig tightened(double factor) const;
};

struct QuadratureResult {
  Complex value{};
  /// Difference between the last two refinement levels.
  double error_estimate = 0.0;
  int levels = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Integral of g over the whole real line of the log variable, using the
/// sinh map t = center + (pi/2) sinh(u) and trapezoidal refinement in u.
/// Nodes outside cfg.truncation_bounds are dropped; if |g| at either bound is
/// not negligible the tails have not decayed and QuadratureDivergence is
/// thrown. Non-finite integrand values also raise QuadratureDivergence.
QuadratureResult integrate_log_line(const RealIntegrand& g, const QuadratureConfig& cfg,
                                    double center = 0.0);

/// Integral over a finite interval [a, b] by tanh-sinh. The integrand may
/// have integrable singularities at the endpoints; nodes are placed so that
/// distances to the endpoints are resolved down to the underflow limit.
QuadratureResult integrate_interval(const RealIntegrand& g, double a, double b,
                                    const QuadratureConfig& cfg);

/// Integral over (0, inf) by exp-sinh, w = exp((pi/2) sinh u).
QuadratureResult integrate_half_line(const RealIntegrand& g, const QuadratureConfig& cfg);

/// n-th derivative of a holomorphic F at center from the Cauchy integral on
/// a circle of the given radius (trapezoidal rule, spectrally accurate).
Complex cauchy_derivative(const ComplexMap& F, Complex center, double radius, int order,
                          int nodes = 64);

/// (1 / 2 pi i) times the contour integral of F around a circle.
Complex circle_residue(const ComplexMap& F, Complex center, double radius, int nodes = 64);

}  // namespace mellinium
