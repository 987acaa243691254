#include <cmath>

#include "doctest.h"
#include "mellinium/corpus.hpp"
#include "mellinium/errors.hpp"
#include "mellinium/mellin_core.hpp"
#include "mellinium/special.hpp"
#include "oracles.hpp"

using namespace mellinium;
using oracle::close;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const MellinError& e) {
    return e.code();
  }
  FAIL("expected a MellinError");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("forward transform of exponentials") {
  CHECK(close(forward_mellin(corpus::exp_decay(1), 2.0).value, 1.0, 1e-10));
  CHECK(close(forward_mellin(corpus::exp_decay(3), 1.0).value, 1.0 / 3.0, 1e-10));
  const Complex a(2.5, 1.0);
  CHECK(close(forward_mellin(corpus::exp_decay(1), a).value, oracle::gamma(a), 1e-9));
  const auto tv = forward_mellin(corpus::exp_decay(1), 0.5);
  CHECK(tv.abs_error_estimate >= 0.0);
  CHECK(tv.strip == FundamentalStrip(0, kInf));
  CHECK_FALSE(tv.continued);
}

TEST_CASE("Bose transform with Gamma normalization gives zeta") {
  const auto tv = forward_mellin(corpus::bose(), 2.0, Normalization::gamma());
  CHECK(close(tv.value, oracle::pi * oracle::pi / 6, 1e-10));
  CHECK(tv.normalization == Normalization::gamma());
}

TEST_CASE("forward transform errors") {
  CHECK(code_of([] { forward_mellin(corpus::exp_decay(1), 0.0); }) == ErrorCode::StripViolation);
  CHECK(code_of([] { forward_mellin(corpus::bose(), 0.9); }) == ErrorCode::StripViolation);
  CHECK(code_of([] {
          forward_mellin(corpus::exp_decay(1), 2.0, Normalization::gamma_contour());
        }) == ErrorCode::NormalizationPole);
  // declared orders wider than the truth: the integrand does not decay
  const MellinFunction lying([](double x) { return Complex(1.0 / (1.0 + x)); }, 0.0, 3.0, "lying");
  CHECK(code_of([&] { forward_mellin(lying, 2.0); }) == ErrorCode::QuadratureDivergence);
}

TEST_CASE("normalizations") {
  const Complex a(1.7, 0.4);
  const auto f = corpus::exp_decay(2);
  const Complex haar = forward_mellin(f, a).value;
  CHECK(close(forward_mellin(f, a, Normalization::gamma()).value * oracle::gamma(a), haar, 1e-10));
  CHECK(close(forward_mellin(f, a, Normalization::gamma_p(2)).value * oracle::gamma(a + 2.0), haar,
              1e-10));
  CHECK(close(forward_mellin(f, a, Normalization::gamma_eta()).value,
              (1.0 - std::pow(Complex(2), 1.0 - a)) * std::pow(Complex(2), -a), 1e-10));
  CHECK(Normalization::parse("gamma-p:3") == Normalization::gamma_p(3));
  CHECK(Normalization::parse("gamma-contour").name() == "gamma-contour");
  CHECK_THROWS_AS(Normalization::parse("gamma-p:x"), MellinError);
  CHECK_THROWS_AS(Normalization::parse("lebesgue"), MellinError);
  const Complex res = Normalization::gamma_contour().pole_residue(3);
  const Complex eps = 1e-7;
  CHECK(close(eps * Normalization::gamma_contour().multiplier(3.0 + eps), res, 1e-5));
}

TEST_CASE("Cauchy-Riemann proxy inside the strip") {
  const auto f = corpus::rational_bump();
  const Complex a(0.6, 0.2);
  const double h = 1e-4;
  const Complex d_re = (forward_mellin(f, a + h).value - forward_mellin(f, a - h).value) / (2 * h);
  const Complex d_im = (forward_mellin(f, a + Complex(0, h)).value -
                        forward_mellin(f, a - Complex(0, h)).value) / (2 * h);
  CHECK(std::abs(d_im - Complex(0, 1) * d_re) < 1e-6);
}

TEST_CASE("strip inference") {
  const auto grid = default_probe_grid();
  auto s = infer_strip(corpus::exp_decay(1), grid);
  CHECK(s.left() == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(std::isinf(s.right()));
  s = infer_strip(corpus::bose(), grid);
  CHECK(s.left() == doctest::Approx(1.05).epsilon(1e-3));
  CHECK(std::isinf(s.right()));
  s = infer_strip(corpus::rational_bump(), grid);
  CHECK(s.left() == doctest::Approx(-0.95).epsilon(1e-3));
  CHECK(s.right() == doctest::Approx(1.95).epsilon(1e-3));
  s = infer_strip(corpus::heat_kernel(3, 1.0), grid);
  CHECK(std::isinf(s.left()));
  CHECK(s.right() == doctest::Approx(1.45).epsilon(1e-3));
  s = infer_strip(corpus::power_log(0.5, 2), grid);
  CHECK(s.left() == doctest::Approx(-0.45).epsilon(1e-2));
}

TEST_CASE("strip inference errors") {
  const auto grid = default_probe_grid();
  const auto wide = corpus::rational_bump().with_orders(-1.0, 2.5);
  CHECK(code_of([&] { infer_strip(wide, grid); }) == ErrorCode::InconsistentDeclaration);
  CHECK(code_of([&] { infer_strip([](double) { return Complex(1.0); }, grid); }) ==
        ErrorCode::InsufficientDecay);
  CHECK(code_of([&] {
          infer_strip([](double x) { return Complex(2.0 + std::sin(std::log(x) * 3)); }, grid);
        }) == ErrorCode::InsufficientDecay);
  CHECK(code_of([&] { infer_strip(corpus::bose(), default_probe_grid(-2, 8)); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("inverse transform") {
  const QuadratureConfig cfg;
  auto G = [](Complex a) { return gamma(a); };
  CHECK(close(inverse_mellin(G, 1.0, 1.0, cfg), std::exp(-1.0), 1e-8));
  auto G2 = [](Complex a) { return gamma(a) * std::pow(Complex(2), -a); };
  CHECK(close(inverse_mellin(G2, 1.0, 1.0, cfg), std::exp(-2.0), 1e-8));
  CHECK(std::abs(inverse_mellin(G, 1.0, 30.0, cfg)) < 1e-12);
  auto flat = [](Complex a) { return 1.0 / (a * a); };
  CHECK(code_of([&] { inverse_mellin(flat, 1.0, 1.0, cfg); }) == ErrorCode::SlowContourDecay);
}

TEST_CASE("round trip forward then inverse") {
  const QuadratureConfig cfg;
  for (const auto& f : {corpus::exp_decay(1), corpus::exp_decay(2), corpus::power_log(1, 0)}) {
    auto F = [&](Complex a) { return forward_mellin(f, a, Normalization::haar(), cfg).value; };
    for (double x : {0.25, 1.0, 4.0}) {
      const double c = f.strip().interior_point().real();
      CHECK(std::abs(inverse_mellin(F, c, x, cfg) - f(x)) < 1e-6);
    }
  }
}

TEST_CASE("Hankel contour reproduces zeta") {
  const auto b = corpus::bose();
  CHECK(close(hankel_mellin(b, 2.0).value, oracle::pi * oracle::pi / 6, 1e-8));
  CHECK(close(hankel_mellin(b, 3.0).value, 1.2020569031595942, 1e-8));
  const auto half = hankel_mellin(b, 0.5);
  CHECK(close(half.value, oracle::zeta(0.5), 1e-8));
  CHECK(half.continued);
  const Complex a(2.5, 0.5);
  CHECK(close(hankel_mellin(b, a).value, forward_mellin(b, a, Normalization::gamma()).value, 1e-8));
}

TEST_CASE("Hankel contour independence and errors") {
  const auto b = corpus::bose();
  HankelContourSpec small;
  small.radius = 0.5;
  small.offset = 0.125;
  CHECK(std::abs(hankel_mellin(b, 0.5).value - hankel_mellin(b, 0.5, small).value) < 1e-7);
  CHECK(code_of([&] { hankel_mellin(b, 1.0); }) == ErrorCode::NormalizationPole);
  HankelContourSpec bad;
  bad.offset = 2.0;
  CHECK(code_of([&] { hankel_mellin(b, 0.5, bad); }) == ErrorCode::InvalidArgument);
  // a radius past the pole at 2 pi i changes the value
  HankelContourSpec wide;
  wide.radius = 9.0;
  wide.offset = 1.0;
  CHECK(code_of([&] { hankel_mellin(b, 0.5, wide); }) == ErrorCode::ContourDependence);
  const MellinFunction real_only([](double x) { return Complex(std::exp(-x)); }, 0, kInf, "r");
  CHECK(code_of([&] { hankel_mellin(real_only, 0.5); }) == ErrorCode::AnalyticityFailure);
}
