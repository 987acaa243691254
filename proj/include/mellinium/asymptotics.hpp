#pragma once

#include <vector>

#include "mellinium/quadrature.hpp"
#include "mellinium/strip.hpp"

namespace mellinium {

enum class Side { AtZero, AtInfinity };

const char* side_name(Side side);

/// c / (alpha - pole)^{log_order + 1}
struct PoleTerm {
  Complex pole{};
  int log_order = 0;
  Complex coefficient{};
};

/// Principal parts of a transform at the poles that govern one endpoint.
class SingularExpansion {
 public:
  explicit SingularExpansion(Side side, std::vector<PoleTerm> terms = {});

  Side side() const noexcept { return side_; }
  const std::vector<PoleTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  /// Sum of the principal parts at alpha.
  Complex operator()(Complex alpha) const;

  /// StripViolation if a pole sits on the wrong side of the strip.
  void check_against(const FundamentalStrip& strip) const;

 private:
  Side side_;
  std::vector<PoleTerm> terms_;
};

/// c x^exponent (log x)^log_power
struct AsymptoticTerm {
  Complex exponent{};
  int log_power = 0;
  Complex coefficient{};
};

/// f(x) = sum of terms + O(x^remainder_order) at one endpoint. Terms are kept
/// leading first: ascending Re exponent at 0, descending at infinity.
class AsymptoticSeries {
 public:
  AsymptoticSeries(Side side, std::vector<AsymptoticTerm> terms, double remainder_order);

  Side side() const noexcept { return side_; }
  const std::vector<AsymptoticTerm>& terms() const noexcept { return terms_; }
  double remainder_order() const noexcept { return remainder_; }

  Complex operator()(double x) const;

 private:
  Side side_;
  std::vector<AsymptoticTerm> terms_;
  double remainder_;
};

/// Endpoint asymptotics to the transform's principal parts. A term
/// x^e (log x)^k maps to a pole at -e of order k + 1.
SingularExpansion singular_from_asymptotic(const AsymptoticSeries& series);

/// The converse map; poles whose terms are not dominated by x^M are rejected.
AsymptoticSeries asymptotic_from_singular(const SingularExpansion& expansion, double M);

struct ResidueConfig {
  double radius = 0.25;
  int nodes = 64;
  /// Residues at radius and radius / 2 must agree to this (relative, floor 1).
  double tolerance = 1e-8;

  void validate() const;
};

/// Sum of residues of F(alpha) x^{-alpha} at the poles, with sign + at 0 and
/// - at infinity. ResidueInstability when the two radii disagree.
Complex residue_asymptotics(const ComplexMap& transform, const std::vector<Complex>& poles,
                            double x, Side side, const ResidueConfig& cfg = {});

/// Numerical principal parts of F at the given poles, up to max_order
/// (1 = simple, 2 = double). Coefficients below drop_below are omitted.
SingularExpansion principal_parts(const ComplexMap& transform, const std::vector<Complex>& poles,
                                  Side side, int max_order = 2, const ResidueConfig& cfg = {},
                                  double drop_below = 1e-12);

}  // namespace mellinium
