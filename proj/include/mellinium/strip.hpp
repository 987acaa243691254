#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <string>

namespace mellinium {

using Complex = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Open vertical strip a < Re(alpha) < b on which a transform converges.
/// Either abscissa may be infinite.
class FundamentalStrip {
 public:
  /// Throws InvalidArgument unless a < b.
  FundamentalStrip(double a, double b);

  double left() const noexcept { return a_; }
  double right() const noexcept { return b_; }

  bool contains(Complex alpha) const noexcept {
    return a_ < alpha.real() && alpha.real() < b_;
  }

  /// Distance from Re(alpha) to the nearer edge (negative outside).
  double margin(Complex alpha) const noexcept;

  /// Intersection, or nullopt when it is empty.
  std::optional<FundamentalStrip> intersect(const FundamentalStrip& other) const;

  /// Strip of alpha such that 1 - alpha lies in this strip.
  FundamentalStrip reflected() const { return {1.0 - b_, 1.0 - a_}; }

  /// A point well inside the strip, used for probing.
  Complex interior_point() const noexcept;

  /// Renders as <a, b> with infinite edges written as -inf / inf.
  std::string to_string() const;

  friend bool operator==(const FundamentalStrip&, const FundamentalStrip&) = default;

 private:
  double a_;
  double b_;
};

std::string format_abscissa(double v);

}  // namespace mellinium
