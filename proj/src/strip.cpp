#include "mellinium/strip.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "mellinium/errors.hpp"

namespace mellinium {

FundamentalStrip::FundamentalStrip(double a, double b) : a_(a), b_(b) {
  require(!std::isnan(a) && !std::isnan(b), ErrorCode::InvalidArgument, "strip abscissa is NaN");
  require(a < b, ErrorCode::InvalidArgument,
          "empty strip <" + format_abscissa(a) + ", " + format_abscissa(b) + ">");
}

double FundamentalStrip::margin(Complex alpha) const noexcept {
  return std::min(alpha.real() - a_, b_ - alpha.real());
}

std::optional<FundamentalStrip> FundamentalStrip::intersect(const FundamentalStrip& other) const {
  const double a = std::max(a_, other.a_);
  const double b = std::min(b_, other.b_);
  if (!(a < b)) return std::nullopt;
  return FundamentalStrip(a, b);
}

Complex FundamentalStrip::interior_point() const noexcept {
  if (std::isfinite(a_) && std::isfinite(b_)) return 0.5 * (a_ + b_);
  if (std::isfinite(a_)) return a_ + 1.0;
  if (std::isfinite(b_)) return b_ - 1.0;
  return 1.0;
}

std::string format_abscissa(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string FundamentalStrip::to_string() const {
  return "<" + format_abscissa(a_) + ", " + format_abscissa(b_) + ">";
}

}  // namespace mellinium
