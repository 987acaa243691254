#include "mellinium/mellin_function.hpp"

#include <cmath>

#include "mellinium/errors.hpp"

namespace mellinium {

MellinFunction::MellinFunction(Eval eval, double order_at_zero, double order_at_infinity,
                               std::string label, ComplexEval continuation, Complex unit_mass)
    : eval_(std::move(eval)),
      continuation_(std::move(continuation)),
      a_(order_at_zero),
      b_(order_at_infinity),
      label_(std::move(label)),
      unit_mass_(unit_mass) {
  require(static_cast<bool>(eval_), ErrorCode::InvalidArgument, "function has no evaluator");
  require(!std::isnan(a_) && !std::isnan(b_) && a_ < b_, ErrorCode::InvalidArgument,
          "declared orders of '" + label_ + "' give an empty strip");
}

Complex MellinFunction::operator()(Complex z) const {
  if (!continuation_) {
    if (z.imag() == 0.0 && z.real() > 0.0) return eval_(z.real());
    fail(ErrorCode::AnalyticityFailure, "'" + label_ + "' has no complex continuation");
  }
  return continuation_(z);
}

MellinFunction MellinFunction::with_orders(double order_at_zero, double order_at_infinity) const {
  return MellinFunction(eval_, order_at_zero, order_at_infinity, label_, continuation_,
                        unit_mass_);
}

MellinFunction MellinFunction::with_label(std::string label) const {
  return MellinFunction(eval_, a_, b_, std::move(label), continuation_, unit_mass_);
}

}  // namespace mellinium
