#include "mellinium/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mellinium/errors.hpp"

namespace mellinium {
namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double sign_pow(int k) { return k % 2 == 0 ? 1.0 : -1.0; }

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string str(Complex z) {
  std::ostringstream s;
  s.precision(10);
  s << z.real();
  if (z.imag() != 0.0) s << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return s.str();
}

// Residue of F at p computed on two radii; the smaller one is the reference
// only for the stability check.
Complex stable_residue(const ComplexMap& F, Complex p, const ResidueConfig& cfg) {
  const Complex r1 = circle_residue(F, p, cfg.radius, cfg.nodes);
  const Complex r2 = circle_residue(F, p, 0.5 * cfg.radius, cfg.nodes);
  if (!finite(r1) || !finite(r2) ||
      std::abs(r1 - r2) > cfg.tolerance * std::max(1.0, std::abs(r1))) {
    std::ostringstream msg;
    msg << "residue at " << str(p) << " differs between radii " << cfg.radius << " and "
        << 0.5 * cfg.radius << " (" << str(r1) << " vs " << str(r2) << ")";
    fail(ErrorCode::ResidueInstability, msg.str());
  }
  return r1;
}

}  // namespace

const char* side_name(Side side) { return side == Side::AtZero ? "AtZero" : "AtInfinity"; }

SingularExpansion::SingularExpansion(Side side, std::vector<PoleTerm> terms)
    : side_(side), terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const PoleTerm& t = terms_[i];
    require(t.log_order >= 0 && finite(t.pole) && finite(t.coefficient),
            ErrorCode::InvalidArgument, "pole terms need finite data and log_order >= 0");
    for (std::size_t j = 0; j < i; ++j)
      require(!(terms_[j].pole == t.pole && terms_[j].log_order == t.log_order),
              ErrorCode::InvalidArgument,
              "duplicate pole term at " + str(t.pole) + " of log order " +
                  std::to_string(t.log_order));
  }
}

Complex SingularExpansion::operator()(Complex alpha) const {
  Complex sum = 0.0;
  for (const PoleTerm& t : terms_) sum += t.coefficient / std::pow(alpha - t.pole, t.log_order + 1);
  return sum;
}

void SingularExpansion::check_against(const FundamentalStrip& strip) const {
  for (const PoleTerm& t : terms_) {
    const bool ok = side_ == Side::AtZero ? t.pole.real() <= strip.left()
                                          : t.pole.real() >= strip.right();
    if (!ok)
      fail(ErrorCode::StripViolation, std::string(side_name(side_)) + " pole at " + str(t.pole) +
                                          " lies on the wrong side of " + strip.to_string());
  }
}

AsymptoticSeries::AsymptoticSeries(Side side, std::vector<AsymptoticTerm> terms,
                                   double remainder_order)
    : side_(side), terms_(std::move(terms)), remainder_(remainder_order) {
  require(!std::isnan(remainder_order), ErrorCode::InvalidArgument, "remainder order is NaN");
  for (const AsymptoticTerm& t : terms_) {
    require(t.log_power >= 0 && finite(t.exponent) && finite(t.coefficient),
            ErrorCode::InvalidArgument, "series terms need finite data and log_power >= 0");
    const bool dominated = side == Side::AtZero ? t.exponent.real() < remainder_order
                                                : t.exponent.real() > remainder_order;
    require(dominated, ErrorCode::InvalidArgument,
            "term x^" + str(t.exponent) + " is not dominated by the remainder x^" +
                str(remainder_order));
  }
  // leading first; ties broken by the larger log power
  std::stable_sort(terms_.begin(), terms_.end(),
                   [side](const AsymptoticTerm& a, const AsymptoticTerm& b) {
                     const double ra = a.exponent.real(), rb = b.exponent.real();
                     if (ra != rb) return side == Side::AtZero ? ra < rb : ra > rb;
                     return a.log_power > b.log_power;
                   });
}

Complex AsymptoticSeries::operator()(double x) const {
  require(x > 0.0, ErrorCode::InvalidArgument, "series evaluated at x <= 0");
  const double lx = std::log(x);
  Complex sum = 0.0;
  for (const AsymptoticTerm& t : terms_)
    sum += t.coefficient * std::exp(t.exponent * lx) * std::pow(lx, t.log_power);
  return sum;
}

SingularExpansion singular_from_asymptotic(const AsymptoticSeries& series) {
  const double side_sign = series.side() == Side::AtZero ? 1.0 : -1.0;
  std::vector<PoleTerm> poles;
  for (const AsymptoticTerm& t : series.terms()) {
    const int k = t.log_power;
    poles.push_back({-t.exponent, k, side_sign * sign_pow(k) * factorial(k) * t.coefficient});
  }
  return SingularExpansion(series.side(), std::move(poles));
}

AsymptoticSeries asymptotic_from_singular(const SingularExpansion& expansion, double M) {
  const double side_sign = expansion.side() == Side::AtZero ? 1.0 : -1.0;
  std::vector<AsymptoticTerm> terms;
  for (const PoleTerm& p : expansion.terms()) {
    const int k = p.log_order;
    terms.push_back({-p.pole, k, side_sign * sign_pow(k) / factorial(k) * p.coefficient});
  }
  return AsymptoticSeries(expansion.side(), std::move(terms), M);
}

void ResidueConfig::validate() const {
  require(radius > 0.0 && std::isfinite(radius), ErrorCode::InvalidArgument,
          "residue radius must be positive");
  require(nodes >= 8, ErrorCode::InvalidArgument, "residue contour needs at least 8 nodes");
  require(tolerance > 0.0, ErrorCode::InvalidArgument, "residue tolerance must be positive");
}

Complex residue_asymptotics(const ComplexMap& transform, const std::vector<Complex>& poles,
                            double x, Side side, const ResidueConfig& cfg) {
  cfg.validate();
  require(x > 0.0 && std::isfinite(x), ErrorCode::InvalidArgument, "x must be positive");
  const double lx = std::log(x);
  auto g = [&](Complex a) { return transform(a) * std::exp(-a * lx); };
  Complex sum = 0.0;
  for (const Complex p : poles) sum += stable_residue(g, p, cfg);
  return side == Side::AtZero ? sum : -sum;
}

SingularExpansion principal_parts(const ComplexMap& transform, const std::vector<Complex>& poles,
                                  Side side, int max_order, const ResidueConfig& cfg,
                                  double drop_below) {
  cfg.validate();
  require(max_order >= 1 && max_order <= 2, ErrorCode::InvalidArgument,
          "only simple and double poles are supported");
  std::vector<PoleTerm> terms;
  for (const Complex p : poles)
    for (int j = 1; j <= max_order; ++j) {
      auto g = [&](Complex a) { return transform(a) * std::pow(a - p, j - 1); };
      const Complex c = stable_residue(g, p, cfg);
      if (std::abs(c) >= drop_below) terms.push_back({p, j - 1, c});
    }
  return SingularExpansion(side, std::move(terms));
}

}  // namespace mellinium
