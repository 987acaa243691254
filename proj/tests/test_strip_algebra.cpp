#include <cmath>
#include <vector>

#include "doctest.h"
#include "mellinium/corpus.hpp"
#include "mellinium/errors.hpp"
#include "mellinium/mellin_core.hpp"
#include "mellinium/strip_algebra.hpp"
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

struct Entry {
  MellinFunction f;
  ComplexMap F;
  FundamentalStrip strip;
};

std::vector<Entry> corpus_pairs() {
  using C = Complex;
  return {
      {corpus::exp_decay(1), [](C a) { return oracle::gamma(a); }, {0, kInf}},
      {corpus::exp_decay(2), [](C a) { return oracle::gamma(a) * std::pow(C(2), -a); }, {0, kInf}},
      {corpus::power_log(1, 0), [](C a) { return oracle::gamma(a + 1.0); }, {-1, kInf}},
      {corpus::fermi(), [](C a) { return oracle::gamma(a) * oracle::eta(a); }, {0, kInf}},
      {corpus::rational_bump(),
       [](C a) { return oracle::gamma(a + 1.0) * oracle::gamma(2.0 - a) / 2.0; }, {-1, 2}},
      {corpus::reciprocal_shift(), [](C a) { return oracle::pi / std::sin(oracle::pi * a); },
       {0, 1}},
  };
}

// Five probe points inside a strip, away from its edges.
std::vector<Complex> five_points(const FundamentalStrip& s) {
  std::vector<Complex> pts = sample_points(s);
  const double a = s.left(), b = s.right();
  if (std::isfinite(a) && std::isfinite(b)) {
    pts.emplace_back(a + 0.4 * (b - a), 0.8);
    pts.emplace_back(a + 0.6 * (b - a), -0.6);
  } else if (std::isfinite(a)) {
    pts.emplace_back(a + 0.8, 0.8);
    pts.emplace_back(a + 3.0, -1.0);
  } else {
    pts.emplace_back(b - 0.8, 0.8);
    pts.emplace_back(b - 3.0, -1.0);
  }
  return pts;
}

std::vector<TransformRule> all_rules() {
  return {TransformRule::scale(2.5),          TransformRule::power_shift(0.5),
          TransformRule::power_substitute(2), TransformRule::power_substitute(-1.5),
          TransformRule::log_multiply(2),     TransformRule::euler_derivative(2),
          TransformRule::derivative(2),       TransformRule::primitive(1),
          TransformRule::primitive(2)};
}

}  // namespace

TEST_CASE("table examples") {
  const TransformedPair base(corpus::exp_decay(1), [](Complex a) { return oracle::gamma(a); },
                             {0, kInf});
  const auto scaled = apply_rule(TransformRule::scale(2), base);
  CHECK(close(scaled.function_side()(1.0), std::exp(-2.0), 1e-15));
  CHECK(close(scaled.transform(1.5), std::pow(2.0, -1.5) * oracle::gamma(1.5), 1e-12));
  CHECK(scaled.strip() == FundamentalStrip(0, kInf));

  const auto euler = apply_rule(TransformRule::euler_derivative(1), base);
  CHECK(close(euler.function_side()(1.3), -1.3 * std::exp(-1.3), 1e-12));
  CHECK(close(euler.transform(2.0), -2.0, 1e-12));

  const auto sub = apply_rule(TransformRule::power_substitute(2), base);
  CHECK(close(sub.function_side()(1.5), std::exp(-2.25), 1e-14));
  CHECK(close(sub.transform(1.0), 0.5 * std::sqrt(oracle::pi), 1e-12));
  CHECK(sub.strip() == FundamentalStrip(0, kInf));
}

TEST_CASE("strip mapping") {
  const TransformedPair rb(corpus::rational_bump(),
                           [](Complex a) { return oracle::gamma(a + 1.0) * oracle::gamma(2.0 - a) / 2.0; },
                           {-1, 2});
  CHECK(apply_rule(TransformRule::power_shift(0.5), rb).strip() == FundamentalStrip(-1.5, 1.5));
  CHECK(apply_rule(TransformRule::power_substitute(-2), rb).strip() == FundamentalStrip(-4, 2));
  CHECK(apply_rule(TransformRule::derivative(1), rb).strip() == FundamentalStrip(0, 3));
  CHECK(apply_rule(TransformRule::primitive(1), rb).strip() == FundamentalStrip(-2, 0));
}

TEST_CASE("rule soundness on the corpus") {
  for (const auto& e : corpus_pairs()) {
    const TransformedPair base(e.f, e.F, e.strip);
    for (const auto& rule : all_rules()) {
      if (rule.kind == TransformRule::Kind::Primitive && !(e.strip.left() < 1.0)) continue;
      CAPTURE(e.f.label());
      CAPTURE(rule.name());
      const auto out = apply_rule(rule, base);
      for (const Complex a : five_points(out.strip())) {
        CAPTURE(a);
        const Complex direct = forward_mellin(out.function_side(), a).value;
        CHECK(close(direct, out.transform(a), 1e-7, 1e-12));
      }
    }
  }
}

TEST_CASE("rule errors") {
  const TransformedPair bose(corpus::bose(),
                             [](Complex a) { return oracle::gamma(a) * oracle::zeta(a); },
                             {1, kInf});
  CHECK(code_of([&] { apply_rule(TransformRule::primitive(1), bose); }) ==
        ErrorCode::SideConditionViolation);
  const TransformedPair recip(corpus::reciprocal_shift(),
                              [](Complex a) { return oracle::pi / std::sin(oracle::pi * a); },
                              {0, 1});
  CHECK(apply_rule(TransformRule::primitive(2), recip).strip() == FundamentalStrip(-2, -1));
  const MellinFunction real_only([](double x) { return Complex(std::exp(-x)); }, 0, kInf, "r");
  const TransformedPair plain(real_only, [](Complex a) { return oracle::gamma(a); }, {0, kInf});
  CHECK(code_of([&] { apply_rule(TransformRule::derivative(1), plain); }) ==
        ErrorCode::SideConditionViolation);
  CHECK(code_of([&] { TransformRule::scale(-1); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { TransformRule::power_substitute(0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] {
          TransformedPair(corpus::exp_decay(1), [](Complex a) { return 2.0 * oracle::gamma(a); },
                          {0, kInf});
        }) == ErrorCode::InvalidArgument);
}

TEST_CASE("multiplicative convolution") {
  const auto e1 = corpus::exp_decay(1);
  const auto xe = corpus::power_log(1, 0);
  CHECK(close(forward_mellin(mult_convolve(e1, e1), 2.0).value, 1.0, 1e-8));
  CHECK(close(forward_mellin(mult_convolve(e1, xe), 1.5).value,
              oracle::gamma(1.5) * oracle::gamma(2.5), 1e-8));
  const auto rb = corpus::rational_bump();
  const auto conv = mult_convolve(e1, rb);
  CHECK(conv.strip() == FundamentalStrip(0, 2));
  const Complex a(1.2, 0.4);
  CHECK(close(forward_mellin(conv, a).value, forward_mellin(e1, a).value * forward_mellin(rb, a).value,
              1e-7));
  CHECK(code_of([] { mult_convolve(corpus::bose(), corpus::reciprocal_shift()); }) ==
        ErrorCode::EmptyStripIntersection);
}

TEST_CASE("star convolution") {
  const auto e1 = corpus::exp_decay(1);
  const auto xe = corpus::power_log(1, 0);
  const auto s = star_convolve(e1, xe);
  CHECK(close(forward_mellin(s, 0.5).value, oracle::pi / 2, 1e-8));
  CHECK(close(forward_mellin(star_convolve(e1, e1), 0.5).value, oracle::pi, 1e-8));
  const Complex a(0.3, 0.5);
  CHECK(close(forward_mellin(s, a).value, oracle::gamma(a) * oracle::gamma(2.0 - a), 1e-7));
  CHECK(code_of([] { star_convolve(corpus::bose(), corpus::bose()); }) ==
        ErrorCode::EmptyStripIntersection);
}

TEST_CASE("Plancherel on the critical line") {
  for (const auto& f : {corpus::exp_decay(1), corpus::rational_bump()}) {
    const auto ff = mult_convolve(f, involution(f));
    for (const Complex a : {Complex(0.5, 0.0), Complex(0.5, 0.7)}) {
      const double mag = std::abs(forward_mellin(f, a).value);
      CHECK(close(forward_mellin(ff, a).value, mag * mag, 1e-7));
    }
  }
}

TEST_CASE("associativity at the transform level") {
  const auto e1 = corpus::exp_decay(1);
  const auto e2 = corpus::exp_decay(2);
  const auto rb = corpus::rational_bump();
  const Complex a(1.0, 0.3);
  const Complex left = forward_mellin(mult_convolve(mult_convolve(e1, e2), rb), a).value;
  const Complex right = forward_mellin(mult_convolve(e1, mult_convolve(e2, rb)), a).value;
  CHECK(close(left, right, 1e-7));
}

TEST_CASE("Parseval") {
  const auto e1 = corpus::exp_decay(1);
  auto [lhs, rhs] = parseval_pair(e1, e1, 2.0, 1.0);
  CHECK(close(lhs, 0.25, 1e-9));
  CHECK(close(rhs, 0.25, 1e-7));
  std::tie(lhs, rhs) = parseval_pair(e1, e1, 1.0, 0.5);
  CHECK(close(lhs, 0.5, 1e-9));
  CHECK(close(rhs, 0.5, 1e-7));
  std::tie(lhs, rhs) = parseval_pair(e1, corpus::bose(), 3.0, 1.5);
  Complex series = 0.0;
  for (int n = 200000; n >= 1; --n) series += 2.0 / std::pow(1.0 + n, 3);
  CHECK(close(lhs, series, 1e-8));
  CHECK(close(rhs, lhs, 1e-7));
  CHECK(code_of([&] { parseval_pair(e1, e1, 1.0, 1.5); }) == ErrorCode::StripViolation);
}

TEST_CASE("convolution exponential") {
  const auto e1 = corpus::exp_decay(1);
  for (const double a : {2.0, 1.5}) {
    const Complex h = forward_mellin(e1, a).value;
    const auto ce = convolution_exp(e1, 12);
    CHECK(ce.unit_mass() == Complex(1.0));
    const double bound = std::pow(std::abs(h), 13) / oracle::factorial(13) + 1e-8;
    CHECK(std::abs(forward_mellin(ce, a).value - std::exp(-h)) <= bound);
  }
  const auto zero = convolution_exp(e1, 0);
  CHECK(close(forward_mellin(zero, 1.3).value, 1.0, 1e-14));
}

TEST_CASE("convolution powers") {
  const ConvolutionPowers p(corpus::exp_decay(1), 4);
  for (int n = 1; n <= 4; ++n)
    CHECK(close(p.grid_transform(n, 1.5), std::pow(oracle::gamma(1.5), n), 1e-9));
  ConvolutionGrid g;
  g.divergence_bound = 5.0;
  CHECK(code_of([&] { ConvolutionPowers(corpus::exp_decay(0.1), 3, g); }) ==
        ErrorCode::DivergentStage);
  g = {};
  g.step = 0.3;
  CHECK(code_of([&] { ConvolutionPowers(corpus::exp_decay(1), 2, g); }) ==
        ErrorCode::InvalidArgument);
}
