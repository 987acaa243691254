#include <cmath>

#include "doctest.h"
#include "mellinium/errors.hpp"
#include "mellinium/special.hpp"
#include "oracles.hpp"

using namespace mellinium;

TEST_CASE("gamma matches tgamma on the real line") {
  for (double x : {0.1, 0.5, 1.0, 1.5, 2.0, 3.7, 10.0, 25.5, -0.5, -1.5, -2.25}) {
    CHECK(oracle::close(gamma(Complex(x)), std::tgamma(x), 1e-13));
  }
}

TEST_CASE("gamma matches the Stirling oracle off the axis") {
  for (Complex z : {Complex(2.5, 1.0), Complex(0.3, -4.0), Complex(7.0, 12.0), Complex(0.5, 30.0)}) {
    CHECK(oracle::close(gamma(z), oracle::gamma(z), 1e-12));
  }
}

TEST_CASE("reflection continues gamma to the left half-plane") {
  const Complex z(-1.3, 0.7);
  CHECK(oracle::close(gamma(z) * gamma(1.0 - z), kPi / std::sin(kPi * z), 1e-12));
}

TEST_CASE("rgamma vanishes exactly at non-positive integers") {
  for (int n = 0; n >= -5; --n) CHECK(rgamma(double(n)) == Complex(0.0));
  CHECK(std::isinf(gamma(Complex(-3.0)).real()));
  CHECK(oracle::close(rgamma(Complex(3.0, 0.0)), 0.5, 1e-14));
}

TEST_CASE("sin_pi has exact integer zeros") {
  for (int n = -4; n <= 4; ++n) CHECK(sin_pi(double(n)) == Complex(0.0));
  CHECK(cos_pi(0.5) == Complex(0.0));
  CHECK(oracle::close(sin_pi(Complex(0.25, 0.1)), std::sin(kPi * Complex(0.25, 0.1)), 1e-14));
}

TEST_CASE("near_integer") {
  long n = 0;
  CHECK(near_integer(Complex(3.0, 0.0), &n));
  CHECK(n == 3);
  CHECK_FALSE(near_integer(Complex(3.0, 1e-6)));
  CHECK_FALSE(near_integer(2.5));
}

TEST_CASE("Riemann zeta over the plane") {
  const double pi = oracle::pi;
  CHECK(oracle::close(riemann_zeta(2.0), pi * pi / 6, 1e-14));
  CHECK(oracle::close(riemann_zeta(4.0), std::pow(pi, 4) / 90, 1e-14));
  CHECK(oracle::close(riemann_zeta(0.0), -0.5, 1e-14));
  CHECK(oracle::close(riemann_zeta(-1.0), -1.0 / 12, 1e-13));
  CHECK(std::abs(riemann_zeta(-2.0)) < 1e-15);
  CHECK(oracle::close(riemann_zeta(-3.0), 1.0 / 120, 1e-13));
  for (Complex s : {Complex(0.5), Complex(0.5, 14.134725141734693), Complex(3.0, -7.0),
                    Complex(0.7, 1.5), Complex(1.0, 0.3), Complex(-2.5, 4.0)}) {
    CAPTURE(s);
    if (s.real() >= 0.5 && std::abs(s.imag()) < 10)
      CHECK(oracle::close(riemann_zeta(s), oracle::zeta(s), 1e-11, 1e-12));
    else
      CHECK(oracle::close(riemann_zeta(s), oracle::zeta_any(s), 1e-9, 1e-9));
  }
  CHECK(std::abs(riemann_zeta(Complex(0.5, 14.134725141734693))) < 1e-9);
  CHECK_THROWS_AS(riemann_zeta(1.0), MellinError);
}
