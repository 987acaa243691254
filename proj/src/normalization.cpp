#include "mellinium/normalization.hpp"

#include <cmath>

#include "mellinium/errors.hpp"
#include "mellinium/special.hpp"

namespace mellinium {
namespace {
const Complex kTwoPiI(0.0, 2.0 * kPi);
}

Normalization Normalization::gamma_p(int p) {
  require(p >= 0, ErrorCode::InvalidArgument, "gamma-p order must be nonnegative");
  return Normalization(Kind::GammaP, p);
}

Normalization Normalization::parse(const std::string& text) {
  if (text == "haar") return haar();
  if (text == "gamma") return gamma();
  if (text == "gamma-contour") return gamma_contour();
  if (text == "gamma-eta") return gamma_eta();
  const std::string prefix = "gamma-p:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string digits = text.substr(prefix.size());
    std::size_t used = 0;
    int p = -1;
    try {
      p = std::stoi(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used == digits.size() && !digits.empty(), ErrorCode::InvalidArgument,
            "bad normalization '" + text + "'");
    return gamma_p(p);
  }
  fail(ErrorCode::InvalidArgument, "unknown normalization '" + text + "'");
}

bool Normalization::is_pole(Complex alpha, long* n) const {
  if (kind_ != Kind::GammaContour) return false;
  long k = 0;
  if (!near_integer(alpha, &k) || k < 1) return false;
  if (n) *n = k;
  return true;
}

Complex Normalization::pole_residue(long n) const {
  require(kind_ == Kind::GammaContour && n >= 1, ErrorCode::InvalidArgument,
          "normalization has no pole at " + std::to_string(n));
  double f = 1.0;
  for (long j = 2; j < n; ++j) f *= static_cast<double>(j);
  return (n % 2 == 0 ? 1.0 : -1.0) / f / kTwoPiI;
}

Complex Normalization::multiplier(Complex alpha) const {
  switch (kind_) {
    case Kind::Haar:
      return 1.0;
    case Kind::Gamma:
      return rgamma(alpha);
    case Kind::GammaP:
      return rgamma(alpha + static_cast<double>(p_));
    case Kind::GammaContour: {
      long n = 0;
      if (is_pole(alpha, &n))
        fail(ErrorCode::NormalizationPole,
             "gamma-contour multiplier has a pole at alpha = " + std::to_string(n));
      return mellinium::gamma(1.0 - alpha) / kTwoPiI;
    }
    case Kind::GammaEta:
      return (1.0 - std::pow(Complex(2.0), 1.0 - alpha)) * rgamma(alpha);
  }
  return 1.0;
}

std::string Normalization::name() const {
  switch (kind_) {
    case Kind::Haar:
      return "haar";
    case Kind::Gamma:
      return "gamma";
    case Kind::GammaP:
      return "gamma-p:" + std::to_string(p_);
    case Kind::GammaContour:
      return "gamma-contour";
    case Kind::GammaEta:
      return "gamma-eta";
  }
  return "haar";
}

}  // namespace mellinium
