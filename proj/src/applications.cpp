#include "mellinium/applications.hpp"

#include <cmath>
#include <sstream>

#include "mellinium/corpus.hpp"
#include "mellinium/errors.hpp"
#include "mellinium/special.hpp"
#include "mellinium/strip_algebra.hpp"

namespace mellinium {
namespace {

std::string str(Complex z) {
  std::ostringstream s;
  s.precision(10);
  s << z.real();
  if (z.imag() != 0.0) s << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return s.str();
}

void require_beta(double beta) {
  require(beta > 0.0 && std::isfinite(beta), ErrorCode::InvalidArgument, "beta must be positive");
}

}  // namespace

double HeatKernelProblem::distance() const {
  require(n >= 1, ErrorCode::InvalidArgument, "dimension must be positive");
  require(x_a.size() == static_cast<std::size_t>(n) && x_b.size() == static_cast<std::size_t>(n),
          ErrorCode::InvalidArgument, "points must have n coordinates");
  double s = 0.0;
  for (int i = 0; i < n; ++i) s = std::hypot(s, x_b[i] - x_a[i]);
  if (!(s > 0.0)) fail(ErrorCode::CoincidentPoints, "the two points coincide");
  return s;
}

HeatKernelProblem HeatKernelProblem::at_distance(int n, double distance) {
  require(n >= 1, ErrorCode::InvalidArgument, "dimension must be positive");
  HeatKernelProblem p;
  p.n = n;
  p.x_a.assign(n, 0.0);
  p.x_b.assign(n, 0.0);
  p.x_b[0] = distance;
  return p;
}

double greens_function(const HeatKernelProblem& prob, GreensRoute route,
                       const QuadratureConfig& cfg) {
  const double r = prob.distance();
  const int n = prob.n;
  if (route == GreensRoute::ClosedForm) {
    if (n == 2) return -2.0 * std::log(r);
    const double h = 0.5 * n - 1.0;
    return std::pow(kPi, -h) * gamma(Complex(h)).real() * std::pow(r, -2.0 * h);
  }
  if (n <= 2)
    fail(ErrorCode::DivergentRoute, "the defining integral diverges for n = " + std::to_string(n) +
                                        "; only the closed form is available");
  return forward_mellin(corpus::heat_kernel(n, r), 1.0, Normalization::haar(), cfg).value.real();
}

TransformValue zeta_value(Complex alpha, ZetaRepresentation route, const QuadratureConfig& cfg) {
  if (alpha == Complex(1.0)) fail(ErrorCode::PoleAtOne, "zeta has a pole at alpha = 1");
  if (route == ZetaRepresentation::RealLine)
    return forward_mellin(corpus::bose(), alpha, Normalization::gamma(), cfg);
  if (!(alpha.real() > 0.0))
    fail(ErrorCode::StripViolation, "alpha = " + str(alpha) + " outside <0, inf> \\ {1}");
  return hankel_mellin(corpus::bose(), alpha, {}, Normalization::gamma_contour(), cfg);
}

TransformValue eta_value(Complex alpha, const QuadratureConfig& cfg) {
  return forward_mellin(corpus::fermi(), alpha, Normalization::gamma(), cfg);
}

std::pair<Complex, Complex> gamma_reflection(Complex alpha, const QuadratureConfig& cfg) {
  if (!(alpha.real() > 0.0 && alpha.real() < 1.0))
    fail(ErrorCode::StripViolation, "alpha = " + str(alpha) + " outside <0, 1>");
  const MellinFunction e = corpus::exp_decay(1.0);
  // (e star e)(x) = integral of exp(-x x') exp(-x') dx', transform Gamma(a) Gamma(1-a)
  const Complex lhs = forward_mellin(star_convolve(e, e, cfg), alpha, Normalization::haar(), cfg).value;
  return {lhs, kPi / sin_pi(alpha)};
}

TransformValue subtracted_exponential_transform(double beta, Complex alpha,
                                                const QuadratureConfig& cfg) {
  require_beta(beta);
  const double d = beta - 1.0;
  // e^{-g} (e^{-(beta-1) g} - 1), without cancellation at small g
  const MellinFunction f(
      [d](double g) {
        const double v = std::exp(-g) * std::expm1(-d * g);
        return Complex(std::isfinite(v) ? v : 0.0);
      },
      -1.0, kInf, "subtracted_exp(" + str(beta) + ")");
  if (d == 0.0) {
    if (!f.strip().contains(alpha))
      fail(ErrorCode::StripViolation, "alpha = " + str(alpha) + " outside " + f.strip().to_string());
    TransformValue tv;
    tv.alpha = alpha;
    tv.strip = f.strip();
    return tv;
  }
  return forward_mellin(f, alpha, Normalization::haar(), cfg);
}

TransformValue gamma_p_extension(double beta, Complex alpha, int p, const QuadratureConfig& cfg) {
  require_beta(beta);
  require(p >= 1, ErrorCode::InvalidArgument, "p must be a positive integer");
  const MellinFunction f(
      [beta, p](double g) {
        const double bg = beta * g;
        return Complex(bg > 0.0 ? std::exp(p * std::log(bg) - bg) : 0.0);
      },
      -static_cast<double>(p), kInf, "gamma_p_kernel(" + str(beta) + "," + std::to_string(p) + ")");
  return forward_mellin(f, alpha, Normalization::gamma_p(p), cfg);
}

}  // namespace mellinium
