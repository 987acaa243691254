#pragma once

#include <complex>

#include "mellinium/strip.hpp"

namespace mellinium {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// sin(pi z) and cos(pi z) with exact argument reduction on the real part,
/// so that integer and half-integer zeros come out exactly.
Complex sin_pi(Complex z);
Complex cos_pi(Complex z);

/// Gamma function on the principal sheet (Lanczos, g = 7, with reflection).
/// Returns complex infinity at the non-positive integers.
Complex gamma(Complex z);

/// log Gamma for Re z >= 1/2; continued by reflection elsewhere. The branch
/// is chosen so that exp(log_gamma(z)) == gamma(z); it is not the principal
/// log-gamma for large |Im z|.
Complex log_gamma(Complex z);

/// 1/Gamma(z), entire; exactly zero at the non-positive integers.
Complex rgamma(Complex z);

/// pi / sin(pi z).
Complex pi_csc_pi(Complex z);

/// Riemann zeta away from s = 1: Euler-Maclaurin for Re s >= -1/2, the
/// functional equation below. PoleAtOne at s = 1.
Complex riemann_zeta(Complex s);

/// True if z is (within tol) the integer n, written to *n.
bool near_integer(Complex z, long* n = nullptr, double tol = 1e-12);

}  // namespace mellinium
