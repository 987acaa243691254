#pragma once

#include <utility>
#include <vector>

#include "mellinium/mellin_core.hpp"

namespace mellinium {

struct HeatKernelProblem {
  int n = 3;
  std::vector<double> x_a;
  std::vector<double> x_b;

  /// |x_b - x_a|; CoincidentPoints when zero, InvalidArgument on bad lengths.
  double distance() const;
  /// A problem with the two points placed distance apart on the first axis.
  static HeatKernelProblem at_distance(int n, double distance);
};

enum class GreensRoute { ClosedForm, Quadrature };

/// Free Laplacian Green's function as the Haar transform at 1 of
/// exp(-pi r^2 / g) g^{-n/2}. The quadrature route needs n >= 3
/// (DivergentRoute otherwise); the closed form covers every n.
double greens_function(const HeatKernelProblem& prob, GreensRoute route = GreensRoute::ClosedForm,
                       const QuadratureConfig& cfg = {});

enum class ZetaRepresentation { RealLine, Hankel };

/// zeta(alpha) from the Bose function: Gamma-normalised on Re alpha > 1, or
/// along a Hankel contour for Re alpha > 0. PoleAtOne at alpha = 1.
TransformValue zeta_value(Complex alpha, ZetaRepresentation route = ZetaRepresentation::RealLine,
                          const QuadratureConfig& cfg = {});

/// eta(alpha), the Gamma-normalised transform of the Fermi function.
TransformValue eta_value(Complex alpha, const QuadratureConfig& cfg = {});

/// (lhs, rhs): the transform of e^{-x} star e^{-x} at alpha, and pi csc(pi alpha).
std::pair<Complex, Complex> gamma_reflection(Complex alpha, const QuadratureConfig& cfg = {});

/// Haar transform of e^{-beta g} - e^{-g} on <-1, inf>, by quadrature; equals
/// Gamma(alpha) (beta^{-alpha} - 1), and -log beta at alpha = 0.
TransformValue subtracted_exponential_transform(double beta, Complex alpha,
                                                const QuadratureConfig& cfg = {});

/// Transform of (beta g)^p e^{-beta g} normalised by 1 / Gamma(alpha + p) on
/// <-p, inf>; equals beta^{-alpha}.
TransformValue gamma_p_extension(double beta, Complex alpha, int p, const QuadratureConfig& cfg = {});

}  // namespace mellinium
