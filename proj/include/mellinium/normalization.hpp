#pragma once

#include <string>

#include "mellinium/strip.hpp"

namespace mellinium {

/// Measure convention for a transform, expressed as a multiplier m(alpha)
/// applied to the Haar-measure integral.
class Normalization {
 public:
  enum class Kind { Haar, Gamma, GammaP, GammaContour, GammaEta };

  static Normalization haar() { return Normalization(Kind::Haar, 0); }
  static Normalization gamma() { return Normalization(Kind::Gamma, 0); }
  /// m(alpha) = 1 / Gamma(alpha + p).
  static Normalization gamma_p(int p);
  /// m(alpha) = pi csc(pi alpha) / (2 pi i Gamma(alpha)) = Gamma(1 - alpha) / (2 pi i).
  static Normalization gamma_contour() { return Normalization(Kind::GammaContour, 0); }
  static Normalization gamma_eta() { return Normalization(Kind::GammaEta, 0); }

  /// Accepts haar, gamma, gamma-p:<p>, gamma-contour, gamma-eta.
  static Normalization parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  int p() const noexcept { return p_; }

  /// m(alpha); throws NormalizationPole at a pole.
  Complex multiplier(Complex alpha) const;

  /// If alpha is a pole of m, returns true and stores the integer location.
  bool is_pole(Complex alpha, long* n = nullptr) const;

  /// lim (alpha - n) m(alpha) at a pole n.
  Complex pole_residue(long n) const;

  std::string name() const;

  friend bool operator==(const Normalization&, const Normalization&) = default;

 private:
  Normalization(Kind kind, int p) : kind_(kind), p_(p) {}
  Kind kind_;
  int p_;
};

}  // namespace mellinium
