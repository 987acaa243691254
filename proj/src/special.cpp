#include "mellinium/special.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "mellinium/errors.hpp"

namespace mellinium {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * kPi);

// sin(pi x), cos(pi x) for real x, reduced to [-1/2, 1/2].
void sincos_pi_real(double x, double* s, double* c) {
  double r = std::remainder(x, 2.0);  // in [-1, 1]
  if (r > 0.5) {
    r = 1.0 - r;
    // sin(pi(1-r)) = sin(pi r), cos(pi(1-r)) = -cos(pi r)
    const double a = kPi * r;
    *s = std::sin(a);
    *c = -std::cos(a);
    return;
  }
  if (r < -0.5) {
    r = -1.0 - r;
    const double a = kPi * r;
    *s = std::sin(a);
    *c = -std::cos(a);
    return;
  }
  const double a = kPi * r;
  *s = std::sin(a);
  *c = std::abs(r) == 0.5 ? 0.0 : std::cos(a);
}

Complex lanczos_log_gamma(Complex z) {
  // Valid for Re z >= 1/2.
  z -= 1.0;
  Complex x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

Complex sin_pi(Complex z) {
  double s, c;
  sincos_pi_real(z.real(), &s, &c);
  const double y = kPi * z.imag();
  return {s * std::cosh(y), c * std::sinh(y)};
}

Complex cos_pi(Complex z) {
  double s, c;
  sincos_pi_real(z.real(), &s, &c);
  const double y = kPi * z.imag();
  return {c * std::cosh(y), -s * std::sinh(y)};
}

bool near_integer(Complex z, long* n, double tol) {
  const double r = std::round(z.real());
  if (std::abs(z.imag()) > tol || std::abs(z.real() - r) > tol * std::max(1.0, std::abs(r))) return false;
  if (n) *n = static_cast<long>(r);
  return true;
}

Complex log_gamma(Complex z) {
  if (z.real() >= 0.5) return lanczos_log_gamma(z);
  // Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
  return std::log(kPi) - std::log(sin_pi(z)) - lanczos_log_gamma(1.0 - z);
}

Complex gamma(Complex z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real()))
    return {std::numeric_limits<double>::infinity(), 0.0};
  if (z.real() >= 0.5) return std::exp(lanczos_log_gamma(z));
  return kPi / (sin_pi(z) * std::exp(lanczos_log_gamma(1.0 - z)));
}

Complex rgamma(Complex z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real())) return 0.0;
  if (z.real() >= 0.5) return std::exp(-lanczos_log_gamma(z));
  return sin_pi(z) * std::exp(lanczos_log_gamma(1.0 - z)) / kPi;
}

Complex pi_csc_pi(Complex z) { return kPi / sin_pi(z); }

namespace {

// B_2, B_4, ..., B_24
constexpr double kBernoulli[] = {1.0 / 6,           -1.0 / 30,         1.0 / 42,
                                 -1.0 / 30,         5.0 / 66,          -691.0 / 2730,
                                 7.0 / 6,           -3617.0 / 510,     43867.0 / 798,
                                 -174611.0 / 330,   854513.0 / 138,    -236364091.0 / 2730};

Complex zeta_euler_maclaurin(Complex s) {
  const int N = 20 + static_cast<int>(std::ceil(std::abs(s.imag())));
  Complex sum = 0.0;
  for (int n = N - 1; n >= 1; --n) sum += std::exp(-s * std::log(static_cast<double>(n)));
  const double ln = std::log(static_cast<double>(N));
  const Complex n_s = std::exp(-s * ln);
  sum += n_s * static_cast<double>(N) / (s - 1.0) + 0.5 * n_s;
  // B_2k / (2k)! * s (s+1) ... (s+2k-2) * N^{-s-2k+1}
  Complex rising = s;
  Complex power = n_s / static_cast<double>(N);
  double fact = 2.0;
  for (int k = 1; k <= 12; ++k) {
    const Complex term = kBernoulli[k - 1] / fact * rising * power;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    power /= static_cast<double>(N) * N;
    fact *= (2.0 * k + 1) * (2.0 * k + 2);
  }
  return sum;
}

}  // namespace

Complex riemann_zeta(Complex s) {
  if (s == Complex(1.0)) fail(ErrorCode::PoleAtOne, "zeta has a pole at s = 1");
  if (s.real() >= -0.5) return zeta_euler_maclaurin(s);
  // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1-s) zeta(1-s)
  return std::exp(s * std::log(2.0) + (s - 1.0) * std::log(kPi)) * sin_pi(0.5 * s) *
         gamma(1.0 - s) * zeta_euler_maclaurin(1.0 - s);
}

}  // namespace mellinium
