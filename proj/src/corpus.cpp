#include "mellinium/corpus.hpp"

#include <cmath>
#include <sstream>

#include "mellinium/errors.hpp"
#include "mellinium/special.hpp"

namespace mellinium::corpus {
namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

Complex inv_expm1(Complex z) {
  if (std::abs(z) < 1e-4) return 1.0 / (z * (1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0))));
  if (z.real() > 0.0) {
    const Complex e = std::exp(-z);
    return e / (1.0 - e);
  }
  return 1.0 / (std::exp(z) - 1.0);
}

}  // namespace

MellinFunction exp_decay(double beta) {
  require(beta > 0.0 && std::isfinite(beta), ErrorCode::InvalidArgument,
          "exp_decay needs beta > 0");
  return MellinFunction([beta](double x) { return Complex(std::exp(-beta * x)); }, 0.0, kInf,
                        "exp_decay(" + fmt(beta) + ")",
                        [beta](Complex z) { return std::exp(-beta * z); });
}

MellinFunction bose() {
  return MellinFunction([](double x) { return Complex(1.0 / std::expm1(x)); }, 1.0, kInf, "bose",
                        inv_expm1);
}

MellinFunction fermi() {
  return MellinFunction(
      [](double x) {
        const double e = std::exp(-x);
        return Complex(e / (1.0 + e));
      },
      0.0, kInf, "fermi",
      [](Complex z) {
        if (z.real() > 0.0) {
          const Complex e = std::exp(-z);
          return e / (1.0 + e);
        }
        return 1.0 / (std::exp(z) + 1.0);
      });
}

MellinFunction power_log(double eps, int k) {
  require(std::isfinite(eps) && k >= 0, ErrorCode::InvalidArgument,
          "power_log needs finite eps and k >= 0");
  return MellinFunction(
      [eps, k](double x) {
        if (!(x > 0.0) || std::isinf(x)) return Complex(0.0);
        const double l = std::log(x);
        return Complex(std::exp(eps * l - x) * std::pow(l, k));
      },
      -eps, kInf, "power_log(" + fmt(eps) + "," + std::to_string(k) + ")",
      [eps, k](Complex z) {
        const Complex l = std::log(z);
        return std::exp(eps * l - z) * std::pow(l, k);
      });
}

MellinFunction heat_kernel(int n, double distance) {
  require(n >= 1, ErrorCode::InvalidArgument, "heat_kernel needs n >= 1");
  require(distance > 0.0 && std::isfinite(distance), ErrorCode::CoincidentPoints,
          "heat_kernel needs a positive distance");
  const double c = kPi * distance * distance;
  const double h = 0.5 * n;
  return MellinFunction([c, h](double g) { return g > 0.0 ? Complex(std::exp(-c / g - h * std::log(g))) : Complex(0.0); },
                        -kInf, h, "heat_kernel(" + std::to_string(n) + "," + fmt(distance) + ")",
                        [c, h](Complex z) { return std::exp(-c / z - h * std::log(z)); });
}

MellinFunction rational_bump() {
  return MellinFunction(
      [](double x) {
        if (x > 1e100) return Complex(std::pow(x, -2.0));
        return Complex(x / ((1.0 + x) * (1.0 + x) * (1.0 + x)));
      },
      -1.0, 2.0, "rational_bump",
      [](Complex z) { return z / ((1.0 + z) * (1.0 + z) * (1.0 + z)); });
}

MellinFunction reciprocal_shift() {
  return MellinFunction([](double x) { return Complex(1.0 / (1.0 + x)); }, 0.0, 1.0,
                        "reciprocal_shift", [](Complex z) { return 1.0 / (1.0 + z); });
}

}  // namespace mellinium::corpus
