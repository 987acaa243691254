#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mellinium/mellin_function.hpp"
#include "mellinium/quadrature.hpp"
#include "mellinium/strip.hpp"

namespace mellinium {

/// One row of the transform table. Parameters: c for Scale, d for PowerShift,
/// r for PowerSubstitute, n for the integer-indexed kinds.
struct TransformRule {
  enum class Kind {
    Scale,
    PowerShift,
    PowerSubstitute,
    LogMultiply,
    EulerDerivative,
    Derivative,
    Primitive
  };

  Kind kind;
  double parameter = 0.0;
  int n = 1;

  static TransformRule scale(double c);
  static TransformRule power_shift(double d);
  static TransformRule power_substitute(double r);
  static TransformRule log_multiply(int n);
  static TransformRule euler_derivative(int n);
  static TransformRule derivative(int n);
  static TransformRule primitive(int n);

  std::string name() const;
};

/// A function together with its transform on a strip. Construction
/// spot-checks the two sides against each other at three interior points.
class TransformedPair {
 public:
  /// The function side is re-declared with the strip's orders. Throws
  /// InvalidArgument if the sides disagree by more than rel_tol.
  TransformedPair(MellinFunction function_side, ComplexMap transform_side,
                  FundamentalStrip strip, const QuadratureConfig& cfg = {},
                  double rel_tol = 1e-7);

  const MellinFunction& function_side() const noexcept { return f_; }
  const ComplexMap& transform_side() const noexcept { return F_; }
  const FundamentalStrip& strip() const noexcept { return strip_; }

  Complex transform(Complex alpha) const { return F_(alpha); }

 private:
  MellinFunction f_;
  ComplexMap F_;
  FundamentalStrip strip_;
};

/// Three points inside a strip used for spot checks.
std::vector<Complex> sample_points(const FundamentalStrip& strip);

/// Rewrites both sides of a pair by a table rule and maps its strip.
/// EmptyResultStrip if the mapped strip is empty; SideConditionViolation if
/// the rule's side conditions fail (including a failed spot check).
TransformedPair apply_rule(const TransformRule& rule, const TransformedPair& input,
                           const QuadratureConfig& cfg = {});

/// x -> integral of f(x') h(x / x') dx' / x'; transforms multiply.
MellinFunction mult_convolve(const MellinFunction& f, const MellinFunction& h,
                             const QuadratureConfig& cfg = {});

/// x -> integral of f(x x') h(x') dx'; transform is F(alpha) H(1 - alpha).
MellinFunction star_convolve(const MellinFunction& f, const MellinFunction& h,
                             const QuadratureConfig& cfg = {});

/// f*(x) = conj(f(1/x)) / x, with the reflected strip.
MellinFunction involution(const MellinFunction& f);

/// Both sides of the Parseval formula: the direct transform of g h at alpha,
/// and the vertical-line integral of G(s) H(alpha - s) along Re s = c.
std::pair<Complex, Complex> parseval_pair(const MellinFunction& g, const MellinFunction& h,
                                          Complex alpha, double c,
                                          const QuadratureConfig& cfg = {});

/// Uniform grid in t = log x on which convolution powers are tabulated.
struct ConvolutionGrid {
  double t_min = -100.0;
  double t_max = 60.0;
  /// Must divide t_min exactly.
  double step = 1.0 / 32.0;
  /// Stage transforms above this at the probe alpha raise DivergentStage.
  double divergence_bound = 1e6;
};

/// Tabulated powers h, h*h, ... on a ConvolutionGrid.
class ConvolutionPowers {
 public:
  ConvolutionPowers(const MellinFunction& h, int max_power, const ConvolutionGrid& grid = {});

  int max_power() const noexcept { return static_cast<int>(stages_.size()); }
  const ConvolutionGrid& grid() const noexcept { return grid_; }
  const std::vector<Complex>& stage(int power) const { return stages_.at(power - 1); }

  /// Trapezoid sum of stage(power)(t) e^{alpha t} over the grid.
  Complex grid_transform(int power, Complex alpha) const;

 private:
  ConvolutionGrid grid_;
  std::vector<std::vector<Complex>> stages_;
};

/// Truncated exponential series sum_{n=0}^{terms} (-1)^n h^{*n} / n!. The n = 0
/// term is the identity of *, a unit mass at x = 1, carried symbolically.
/// Every stage's grid transform is checked at a probe point of h's strip.
MellinFunction convolution_exp(const MellinFunction& h, int terms, const QuadratureConfig& cfg = {},
                               const ConvolutionGrid& grid = {});

/// Same series with the n >= 1 part tabulated on the grid; returned as
/// (function, tabulated series) so callers can compare against the grid sum.
struct ConvolutionSeries {
  std::shared_ptr<const std::vector<Complex>> values;
  ConvolutionGrid grid;

  Complex operator()(double x) const;
  Complex grid_transform(Complex alpha) const;
};

ConvolutionSeries convolution_series(const MellinFunction& h, int terms,
                                     const ConvolutionGrid& grid = {});

}  // namespace mellinium
