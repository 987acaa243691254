#include "mellinium/mellin_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <sstream>

#include "mellinium/errors.hpp"
#include "mellinium/special.hpp"

namespace mellinium {
namespace {

std::string str(Complex z) {
  std::ostringstream s;
  s.precision(10);
  s << z.real();
  if (z.imag() != 0.0) s << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return s.str();
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double tolerance(const QuadratureConfig& cfg, double scale) {
  return std::max(cfg.abs_tol, cfg.rel_tol * scale);
}

// ---- strip inference -------------------------------------------------------

struct EndFit {
  double order;  // exponent s with |f| ~ x^s toward this end
  bool infinite;
};

constexpr int kFitPoints = 5;
constexpr double kSteepSlope = 20.0;

// xs ordered from the extreme end inward.
EndFit fit_end(const MellinFunction::Eval& f, const std::vector<double>& xs, bool at_zero) {
  std::array<double, kFitPoints> lx{}, lf{};
  for (int i = 0; i < kFitPoints; ++i) {
    const double v = std::abs(f(xs[i]));
    if (std::isnan(v) || std::isinf(v))
      fail(ErrorCode::InsufficientDecay, "function is not finite on the probe grid");
    if (v == 0.0) return {0.0, true};
    lx[i] = std::log(xs[i]);
    lf[i] = std::log(v);
  }
  std::array<double, kFitPoints - 1> slope{}, inv_mid{};
  for (int i = 0; i + 1 < kFitPoints; ++i) {
    slope[i] = (lf[i] - lf[i + 1]) / (lx[i] - lx[i + 1]);
    inv_mid[i] = 2.0 / (lx[i] + lx[i + 1]);
  }
  // decay toward the end is a large positive slope at 0 and a negative one at inf
  const double sign = at_zero ? 1.0 : -1.0;
  if (sign * slope[0] > kSteepSlope && sign * slope[0] > sign * slope[1]) return {0.0, true};

  // s = s_inf + c / log x absorbs logarithmic factors
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = kFitPoints - 1;
  for (int i = 0; i < kFitPoints - 1; ++i) {
    sx += inv_mid[i];
    sy += slope[i];
    sxx += inv_mid[i] * inv_mid[i];
    sxy += inv_mid[i] * slope[i];
  }
  const double det = n * sxx - sx * sx;
  double s_inf = sy / n, c = 0.0;
  if (std::abs(det) > 1e-14) {
    c = (n * sxy - sx * sy) / det;
    s_inf = (sy - c * sx) / n;
  }
  double resid = 0.0;
  for (int i = 0; i < kFitPoints - 1; ++i)
    resid = std::max(resid, std::abs(slope[i] - s_inf - c * inv_mid[i]));
  if (resid > 0.02 * std::max(1.0, std::abs(s_inf)))
    fail(ErrorCode::InsufficientDecay,
         std::string("no power-law behaviour near ") + (at_zero ? "0" : "infinity"));
  return {s_inf, false};
}

FundamentalStrip infer_impl(const MellinFunction::Eval& f, std::vector<double> grid,
                            const std::optional<FundamentalStrip>& declared) {
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  require(!grid.empty() && grid.front() > 0.0, ErrorCode::InvalidArgument,
          "probe grid must contain positive points");
  require(grid.front() <= 1e-4 && grid.back() >= 1e4, ErrorCode::InvalidArgument,
          "probe grid must span at least 4 decades on each side of 1");
  std::vector<double> low, high;
  for (double x : grid) {
    if (x <= 1e-2) low.push_back(x);
    if (x >= 1e2) high.push_back(x);
  }
  require(static_cast<int>(low.size()) >= kFitPoints && static_cast<int>(high.size()) >= kFitPoints,
          ErrorCode::InvalidArgument, "probe grid too sparse near its ends");
  std::reverse(high.begin(), high.end());

  const EndFit zero = fit_end(f, low, true);
  const EndFit inf = fit_end(f, high, false);
  const double a = zero.infinite ? -kInf : -zero.order;
  const double b = inf.infinite ? kInf : -inf.order;

  if (declared) {
    if (declared->left() < a - kStripMargin - 1e-12 || declared->right() > b + kStripMargin + 1e-12)
      fail(ErrorCode::InconsistentDeclaration,
           "declared strip " + declared->to_string() + " is wider than the fitted <" +
               format_abscissa(a) + ", " + format_abscissa(b) + ">");
  }
  const double lo = a + kStripMargin;
  const double hi = b - kStripMargin;
  if (!(lo < hi))
    fail(ErrorCode::InsufficientDecay,
         "fitted orders <" + format_abscissa(a) + ", " + format_abscissa(b) + "> leave no strip");
  return {lo, hi};
}

// ---- Hankel contour --------------------------------------------------------

struct ContourSum {
  Complex value;
  double error;
};

ContourSum hankel_integral(const MellinFunction& f, Complex alpha, double r, double d, double L,
                           bool log_factor, const QuadratureConfig& cfg) {
  auto k = [&](Complex z) {
    const Complex fz = f(z);
    if (!finite(fz))
      fail(ErrorCode::AnalyticityFailure, "'" + f.label() + "' is not finite at z = " + str(z));
    if (fz == 0.0) return Complex(0.0);
    const Complex l = std::log(-z);
    Complex v = fz * std::exp(alpha * l) / z;
    if (log_factor) v *= l;
    if (!finite(v))
      fail(ErrorCode::AnalyticityFailure, "contour integrand overflows at z = " + str(z));
    return v;
  };
  const double x0 = std::sqrt(r * r - d * d);
  const QuadratureResult rays = integrate_interval(
      [&](double x) { return k(Complex(x, -d)) - k(Complex(x, d)); }, x0, L, cfg);
  const double th = std::asin(d / r);
  const QuadratureResult arc = integrate_interval(
      [&](double t) {
        const Complex z = std::polar(r, t);
        return k(z) * Complex(0.0, 1.0) * z;
      },
      th, 2.0 * kPi - th, cfg);
  if (!rays.converged || !arc.converged)
    fail(ErrorCode::QuadratureDivergence, "Hankel contour quadrature did not converge");
  const Complex total = rays.value + arc.value;
  const double tail = std::abs(k(Complex(L, d))) + std::abs(k(Complex(L, -d)));
  if (tail > tolerance(cfg, std::abs(total)))
    fail(ErrorCode::QuadratureDivergence, "integrand has not decayed at the end of the rays");
  return {total, rays.error_estimate + arc.error_estimate};
}

}  // namespace

// The integrand decays like e^{-delta |t|} with delta the distance to the strip
// edge, so the truncation only needs to reach about K / delta. Staying short
// keeps fast-growing functions inside the double range.
static QuadratureConfig reach_config(const FundamentalStrip& strip, Complex alpha,
                              const QuadratureConfig& cfg) {
  constexpr double kMinReach = 60.0;
  const double k = 2.0 * std::log(1.0 / std::min(cfg.abs_tol, 1e-3)) + 20.0;
  auto reach = [&](double delta, double bound) {
    return std::min(bound, std::max(kMinReach, k / delta));
  };
  QuadratureConfig out = cfg;
  out.truncation_bounds = {-reach(alpha.real() - strip.left(), -cfg.truncation_bounds.first),
                           reach(strip.right() - alpha.real(), cfg.truncation_bounds.second)};
  return out;
}

QuadratureResult mellin_integral(const MellinFunction::Eval& f, Complex alpha,
                                 const QuadratureConfig& cfg, double center) {
  const double ar = alpha.real(), ai = alpha.imag();
  auto g = [&f, ar, ai](double t) {
    const Complex v = f(std::exp(t));
    if (v == 0.0) return Complex(0.0);
    const double lm = std::log(std::abs(v)) + ar * t;
    if (lm < -745.0) return Complex(0.0);
    return std::polar(std::exp(lm), std::arg(v) + ai * t);
  };
  return integrate_log_line(g, cfg, center);
}

TransformValue forward_mellin(const MellinFunction& f, Complex alpha, const Normalization& norm,
                              const QuadratureConfig& cfg) {
  const FundamentalStrip strip = f.strip();
  if (!strip.contains(alpha))
    fail(ErrorCode::StripViolation,
         "alpha = " + str(alpha) + " outside " + strip.to_string() + " of '" + f.label() + "'");
  const Complex m = norm.multiplier(alpha);
  const QuadratureResult q = mellin_integral(f.eval(), alpha, reach_config(strip, alpha, cfg));
  if (!q.converged)
    fail(ErrorCode::QuadratureDivergence,
         "transform of '" + f.label() + "' at alpha = " + str(alpha) + " did not converge");
  TransformValue out;
  out.value = m * (q.value + f.unit_mass());
  out.alpha = alpha;
  out.strip = strip;
  out.normalization = norm;
  out.abs_error_estimate = std::abs(m) * q.error_estimate;
  return out;
}

std::vector<double> default_probe_grid(double lo_decade, double hi_decade, int per_decade) {
  require(lo_decade < hi_decade && per_decade >= 1, ErrorCode::InvalidArgument,
          "bad probe grid parameters");
  std::vector<double> grid;
  const int n = static_cast<int>(std::lround((hi_decade - lo_decade) * per_decade));
  for (int i = 0; i <= n; ++i) grid.push_back(std::pow(10.0, lo_decade + double(i) / per_decade));
  return grid;
}

FundamentalStrip infer_strip(const MellinFunction& f, const std::vector<double>& probe_grid) {
  return infer_impl(f.eval(), probe_grid, f.strip());
}

FundamentalStrip infer_strip(const MellinFunction::Eval& f, const std::vector<double>& probe_grid) {
  return infer_impl(f, probe_grid, std::nullopt);
}

Complex inverse_mellin(const ComplexMap& transform, double c, double x,
                       const QuadratureConfig& cfg) {
  cfg.validate();
  require(std::isfinite(c), ErrorCode::InvalidArgument, "contour abscissa must be finite");
  require(x > 0.0 && std::isfinite(x), ErrorCode::InvalidArgument, "x must be positive");
  const double lx = std::log(x);
  auto integrand = [&](double y) {
    const Complex a(c, y);
    const Complex F = transform(a);
    if (F == 0.0) return Complex(0.0);
    return std::exp(-a * lx) * F;
  };
  auto small = [&](double y) {
    return std::abs(integrand(y)) + std::abs(integrand(-y)) < 0.1 * cfg.abs_tol;
  };
  double Y = 1.0;
  while (!(small(Y) && small(1.5 * Y))) {
    Y *= 2.0;
    if (Y > 1e4)
      fail(ErrorCode::SlowContourDecay,
           "transform does not decay along Re alpha = " + format_abscissa(c));
  }
  const QuadratureResult q = integrate_interval(integrand, -Y, Y, cfg);
  if (!q.converged)
    fail(ErrorCode::QuadratureDivergence, "vertical-line quadrature did not converge");
  return q.value / (2.0 * kPi);
}

void HankelContourSpec::validate() const {
  require(radius > 0.0 && offset > 0.0 && ray_length > 0.0, ErrorCode::InvalidArgument,
          "contour dimensions must be positive");
  require(offset < radius, ErrorCode::InvalidArgument, "contour offset must be below the radius");
  require(ray_length > radius, ErrorCode::InvalidArgument,
          "contour rays must extend past the radius");
}

TransformValue hankel_mellin(const MellinFunction& f, Complex alpha,
                             const HankelContourSpec& contour, const Normalization& norm,
                             const QuadratureConfig& cfg) {
  contour.validate();
  cfg.validate();
  if (!f.has_continuation())
    fail(ErrorCode::AnalyticityFailure, "'" + f.label() + "' has no complex continuation");

  long pole = 0;
  const bool at_pole = norm.is_pole(alpha, &pole);
  const Complex a = at_pole ? Complex(static_cast<double>(pole)) : alpha;

  auto evaluate = [&](double r, double d) -> ContourSum {
    if (!at_pole) {
      const ContourSum J = hankel_integral(f, a, r, d, contour.ray_length, false, cfg);
      const Complex m = norm.multiplier(a);
      return {m * J.value, std::abs(m) * J.error};
    }
    // m has a simple pole; J vanishes there and the product is m's residue
    // times J'.
    const ContourSum J = hankel_integral(f, a, r, d, contour.ray_length, false, cfg);
    const ContourSum dJ = hankel_integral(f, a, r, d, contour.ray_length, true, cfg);
    if (std::abs(J.value) > 100.0 * tolerance(cfg, std::abs(dJ.value)) + 10.0 * J.error)
      fail(ErrorCode::NormalizationPole,
           "transform has a pole at alpha = " + std::to_string(pole));
    const Complex res = norm.pole_residue(pole);
    return {res * dJ.value, std::abs(res) * dJ.error};
  };

  const ContourSum full = evaluate(contour.radius, contour.offset);
  const ContourSum half = evaluate(0.5 * contour.radius, 0.5 * contour.offset);
  const double diff = std::abs(full.value - half.value);
  if (diff > 10.0 * tolerance(cfg, std::abs(full.value)) + full.error + half.error)
    fail(ErrorCode::ContourDependence,
         "contour radius r and r/2 disagree by " + std::to_string(diff));

  TransformValue out;
  out.value = full.value;
  out.alpha = alpha;
  out.strip = f.strip();
  out.normalization = norm;
  out.abs_error_estimate = std::max(full.error, diff);
  out.continued = true;
  return out;
}

}  // namespace mellinium
