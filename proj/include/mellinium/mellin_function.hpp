#pragma once

#include <functional>
#include <string>
#include <utility>

#include "mellinium/strip.hpp"

namespace mellinium {

/// A function on (0, inf) with declared endpoint orders: f(x) = O(x^-a) as
/// x -> 0+ and f(x) = O(x^-b) as x -> inf, so its transform lives on <a, b>.
///
/// An optional complex evaluator extends f off the positive axis (needed by
/// contour transforms and by the derivative rules). A point mass at x = 1 can
/// be attached; it contributes the constant unit_mass to every transform.
class MellinFunction {
 public:
  using Eval = std::function<Complex(double)>;
  using ComplexEval = std::function<Complex(Complex)>;

  MellinFunction(Eval eval, double order_at_zero, double order_at_infinity, std::string label,
                 ComplexEval continuation = {}, Complex unit_mass = 0.0);

  Complex operator()(double x) const { return eval_(x); }

  /// Evaluates the analytic continuation; throws AnalyticityFailure if absent.
  Complex operator()(Complex z) const;

  bool has_continuation() const noexcept { return static_cast<bool>(continuation_); }

  double order_at_zero() const noexcept { return a_; }
  double order_at_infinity() const noexcept { return b_; }
  FundamentalStrip strip() const { return {a_, b_}; }
  const std::string& label() const noexcept { return label_; }
  Complex unit_mass() const noexcept { return unit_mass_; }

  const Eval& eval() const noexcept { return eval_; }
  const ComplexEval& continuation() const noexcept { return continuation_; }

  /// Same function with different declared orders.
  MellinFunction with_orders(double order_at_zero, double order_at_infinity) const;
  MellinFunction with_label(std::string label) const;

 private:
  Eval eval_;
  ComplexEval continuation_;
  double a_;
  double b_;
  std::string label_;
  Complex unit_mass_;
};

}  // namespace mellinium
