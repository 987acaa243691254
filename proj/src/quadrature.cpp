#include "mellinium/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "mellinium/errors.hpp"
#include "mellinium/special.hpp"

namespace mellinium {
namespace {

constexpr double kHalfPi = 0.5 * kPi;
constexpr int kMinLevels = 3;
constexpr int kTrimLevel = 3;
constexpr double kTrimFraction = 1e-8;
constexpr double kTrimMargin = 0.5;

struct Node {
  double x;
  double weight;
  bool valid;
};

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Trapezoidal refinement in u on [u_lo, u_hi]; level k uses step 2^-k and
// only evaluates the new (odd) nodes.
template <class Map>
QuadratureResult refine(const RealIntegrand& g, Map map, double u_lo, double u_hi,
                        const QuadratureConfig& cfg) {
  QuadratureResult out;
  Complex sum = 0.0;
  // |weight * g| per node on the early levels, used to trim dead ranges
  std::vector<std::pair<double, double>> early;
  auto add = [&](double u, bool record) {
    const Node n = map(u);
    if (!n.valid) return;
    const Complex v = g(n.x);
    ++out.evaluations;
    if (!finite(v)) {
      std::ostringstream msg;
      msg << "non-finite integrand at " << n.x;
      fail(ErrorCode::QuadratureDivergence, msg.str());
    }
    sum += n.weight * v;
    if (record) early.emplace_back(u, std::abs(n.weight * v));
  };

  for (long k = static_cast<long>(std::ceil(u_lo)); k <= static_cast<long>(std::floor(u_hi)); ++k)
    add(static_cast<double>(k), true);
  double h = 1.0;
  Complex prev = sum * h;
  out.value = prev;
  for (int level = 1; level <= cfg.max_levels; ++level) {
    h *= 0.5;
    const bool record = level < kTrimLevel;
    const long first = static_cast<long>(std::ceil(u_lo / h));
    const long last = static_cast<long>(std::floor(u_hi / h));
    for (long k = first; k <= last; ++k)
      if (k % 2 != 0) add(static_cast<double>(k) * h, record);
    const Complex cur = sum * h;
    out.value = cur;
    out.levels = level + 1;
    out.error_estimate = std::abs(cur - prev);
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(cur));
    if (out.levels >= kMinLevels && out.error_estimate <= tol) {
      out.converged = true;
      return out;
    }
    if (level + 1 == kTrimLevel) {
      // the integrand decays double exponentially in u, so nodes beyond the
      // last significant one on this level stay negligible
      double lo = u_hi, hi = u_lo;
      for (const auto& [u, c] : early)
        if (c > kTrimFraction * tol) {
          lo = std::min(lo, u);
          hi = std::max(hi, u);
        }
      if (lo <= hi) {
        u_lo = std::max(u_lo, lo - kTrimMargin);
        u_hi = std::min(u_hi, hi + kTrimMargin);
      }
      early.clear();
    }
    prev = cur;
  }
  return out;
}

}  // namespace

void QuadratureConfig::validate() const {
  require(rel_tol > 0.0 && std::isfinite(rel_tol), ErrorCode::InvalidArgument,
          "rel_tol must be positive");
  require(abs_tol > 0.0 && std::isfinite(abs_tol), ErrorCode::InvalidArgument,
          "abs_tol must be positive");
  require(max_levels >= kMinLevels && max_levels <= 24, ErrorCode::InvalidArgument,
          "max_levels must lie in [3, 24]");
  require(truncation_bounds.first < 0.0 && truncation_bounds.second > 0.0,
          ErrorCode::InvalidArgument, "truncation bounds must straddle 0");
}

QuadratureConfig QuadratureConfig::tightened(double factor) const {
  QuadratureConfig c = *this;
  c.rel_tol *= factor;
  c.abs_tol *= factor;
  return c;
}

QuadratureResult integrate_log_line(const RealIntegrand& g, const QuadratureConfig& cfg,
                                    double center) {
  cfg.validate();
  const auto [t_min, t_max] = cfg.truncation_bounds;
  center = std::clamp(center, t_min, t_max);
  const double u_lo = -std::asinh((center - t_min) / kHalfPi);
  const double u_hi = std::asinh((t_max - center) / kHalfPi);
  auto map = [center](double u) {
    return Node{center + kHalfPi * std::sinh(u), kHalfPi * std::cosh(u), true};
  };
  QuadratureResult r = refine(g, map, u_lo, u_hi, cfg);

  const Complex g_lo = g(t_min);
  const Complex g_hi = g(t_max);
  r.evaluations += 2;
  const double tail = std::abs(g_lo) + std::abs(g_hi);
  const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value));
  if (!(tail <= tol)) {
    std::ostringstream msg;
    msg << "integrand has not decayed at the truncation bounds (|g| = " << std::abs(g_lo)
        << " at t = " << t_min << ", " << std::abs(g_hi) << " at t = " << t_max << ")";
    fail(ErrorCode::QuadratureDivergence, msg.str());
  }
  return r;
}

QuadratureResult integrate_interval(const RealIntegrand& g, double a, double b,
                                    const QuadratureConfig& cfg) {
  cfg.validate();
  require(std::isfinite(a) && std::isfinite(b) && a < b, ErrorCode::InvalidArgument,
          "interval must be finite and non-empty");
  const double half = 0.5 * (b - a);
  auto map = [a, b, half](double u) {
    const double v = kHalfPi * std::abs(std::sinh(u));
    const double e = std::exp(-2.0 * v);
    // distance to the nearer endpoint, computed without cancellation
    const double d = half * 2.0 * e / (1.0 + e);
    const double x = u < 0.0 ? a + d : b - d;
    const double w = half * kHalfPi * std::cosh(u) * 4.0 * e / ((1.0 + e) * (1.0 + e));
    const bool valid = d > 0.0 && x > a && x < b && w > 0.0;
    return Node{x, w, valid};
  };
  constexpr double kU = 6.5;
  return refine(g, map, -kU, kU, cfg);
}

QuadratureResult integrate_half_line(const RealIntegrand& g, const QuadratureConfig& cfg) {
  return integrate_log_line(
      [&g](double t) {
        const double w = std::exp(t);
        const Complex v = g(w);
        return v == 0.0 ? Complex(0.0) : v * w;
      },
      cfg);
}

Complex cauchy_derivative(const ComplexMap& F, Complex center, double radius, int order,
                          int nodes) {
  require(radius > 0.0 && order >= 0 && nodes >= 4, ErrorCode::InvalidArgument,
          "bad Cauchy circle parameters");
  if (order == 0) return F(center);
  Complex sum = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double theta = 2.0 * kPi * k / nodes;
    const Complex e = std::polar(1.0, theta);
    sum += F(center + radius * e) * std::polar(1.0, -order * theta);
  }
  double factorial = 1.0;
  for (int j = 2; j <= order; ++j) factorial *= j;
  return sum * factorial / (nodes * std::pow(radius, order));
}

Complex circle_residue(const ComplexMap& F, Complex center, double radius, int nodes) {
  require(radius > 0.0 && nodes >= 4, ErrorCode::InvalidArgument, "bad residue circle");
  Complex sum = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const Complex e = std::polar(1.0, 2.0 * kPi * k / nodes);
    sum += F(center + radius * e) * e;
  }
  return sum * radius / static_cast<double>(nodes);
}

}  // namespace mellinium
