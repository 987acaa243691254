#include "mellinium/strip_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "mellinium/errors.hpp"
#include "mellinium/mellin_core.hpp"
#include "mellinium/special.hpp"

namespace mellinium {
namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Integral over the log variable restricted to [lo, hi], with the sinh map
// centred at center. The window is re-expressed symmetrically so the usual
// truncation machinery applies.
QuadratureResult integrate_window(const RealIntegrand& g, double lo, double hi, double center,
                                  const QuadratureConfig& cfg) {
  if (!(lo < hi)) fail(ErrorCode::QuadratureDivergence, "empty inner integration window");
  const double shift = 0.5 * (lo + hi);
  QuadratureConfig local = cfg;
  local.truncation_bounds = {lo - shift, hi - shift};
  // purely relative: the outer transform weights tiny values by large powers
  local.abs_tol = std::numeric_limits<double>::min();
  QuadratureResult q =
      integrate_log_line([&g, shift](double s) { return g(s + shift); }, local, center - shift);
  if (!q.converged) fail(ErrorCode::QuadratureDivergence, "inner integral did not converge");
  return q;
}

// Arguments outside the truncation range are pulled back to its edge; the
// inner integrands only reach them where the partner factor vanishes.
double clamp_arg(double x, const QuadratureConfig& cfg) {
  return std::clamp(x, std::exp(cfg.truncation_bounds.first),
                    std::exp(cfg.truncation_bounds.second));
}

// log(1 + e^t) without overflow.
double softplus(double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

// Inner integral of the iterated primitive:
// z^n / (n-1)! * integral_0^1 (1-u)^{n-1} f(z u) du, with u = w / (1 + w),
// w = e^t. Everything is assembled in log form so that no factor overflows.
template <class Fn>
Complex primitive_value(const Fn& f, Complex z, int n, const QuadratureConfig& cfg) {
  const auto [t_min, t_max] = cfg.truncation_bounds;
  const Complex lz = std::log(z);
  const double lx = lz.real();
  // w runs far enough past 1/|z| and |z| for f's own decay and the
  // (1 - u)^{n-1} factor to take over
  const double lo = t_min - std::max(lx, 0.0);
  const double hi = t_max + std::max(lx, 0.0);
  const double center = std::clamp(std::min(0.0, -lx), lo, hi);
  const double log_fact = std::log(factorial(n - 1));
  auto g = [&](double t) {
    const double sp = softplus(t);
    const Complex v = f(std::exp(lz + (t - sp)));
    if (v == 0.0) return Complex(0.0);
    return std::exp(std::log(v) + static_cast<double>(n) * lz -
                    static_cast<double>(n + 1) * sp + t - log_fact);
  };
  return integrate_window(g, lo, hi, center, cfg).value;
}

// n-th derivative on a circle of radius |z|/2. The constant term is removed
// before summing, which cuts the rounding noise; values beyond the double
// range (noise at extremely small |z|) saturate instead of overflowing.
Complex x_derivative(const MellinFunction& f, Complex z, int n) {
  const Complex f0 = f(z);
  const double rho = 0.5 * std::abs(z);
  constexpr int kNodes = 64;
  Complex sum = 0.0;
  for (int k = 0; k < kNodes; ++k) {
    const double th = 2.0 * kPi * k / kNodes;
    sum += (f(z + std::polar(rho, th)) - f0) * std::polar(1.0, -n * th);
  }
  if (sum == 0.0) return 0.0;
  const double log_mag = std::log(std::abs(sum)) + std::log(factorial(n) / kNodes) -
                         n * std::log(rho);
  const double mag = std::exp(std::min(log_mag, std::log(std::numeric_limits<double>::max())));
  return std::polar(mag, std::arg(sum));
}

// (z d/dz)^n f = (d/dw)^n f(e^w) at w = log z.
Complex euler_derivative(const MellinFunction& f, Complex z, int n) {
  return cauchy_derivative([&f](Complex w) { return f(std::exp(w)); }, std::log(z), 0.5, n);
}

std::string label_of(const TransformRule& rule, const MellinFunction& f) {
  return rule.name() + "[" + f.label() + "]";
}

}  // namespace

// ---- rules -----------------------------------------------------------------

TransformRule TransformRule::scale(double c) {
  require(c > 0.0 && std::isfinite(c), ErrorCode::InvalidArgument, "Scale needs c > 0");
  return {Kind::Scale, c, 1};
}
TransformRule TransformRule::power_shift(double d) {
  require(std::isfinite(d), ErrorCode::InvalidArgument, "PowerShift needs finite d");
  return {Kind::PowerShift, d, 1};
}
TransformRule TransformRule::power_substitute(double r) {
  require(r != 0.0 && std::isfinite(r), ErrorCode::InvalidArgument,
          "PowerSubstitute needs r != 0");
  return {Kind::PowerSubstitute, r, 1};
}
TransformRule TransformRule::log_multiply(int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "LogMultiply needs n >= 1");
  return {Kind::LogMultiply, 0.0, n};
}
TransformRule TransformRule::euler_derivative(int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "EulerDerivative needs n >= 1");
  return {Kind::EulerDerivative, 0.0, n};
}
TransformRule TransformRule::derivative(int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "Derivative needs n >= 1");
  return {Kind::Derivative, 0.0, n};
}
TransformRule TransformRule::primitive(int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "Primitive needs n >= 1");
  return {Kind::Primitive, 0.0, n};
}

std::string TransformRule::name() const {
  switch (kind) {
    case Kind::Scale:
      return "Scale(" + fmt(parameter) + ")";
    case Kind::PowerShift:
      return "PowerShift(" + fmt(parameter) + ")";
    case Kind::PowerSubstitute:
      return "PowerSubstitute(" + fmt(parameter) + ")";
    case Kind::LogMultiply:
      return "LogMultiply(" + std::to_string(n) + ")";
    case Kind::EulerDerivative:
      return "EulerDerivative(" + std::to_string(n) + ")";
    case Kind::Derivative:
      return "Derivative(" + std::to_string(n) + ")";
    case Kind::Primitive:
      return "Primitive(" + std::to_string(n) + ")";
  }
  return "?";
}

std::vector<Complex> sample_points(const FundamentalStrip& strip) {
  const double a = strip.left(), b = strip.right();
  std::vector<double> re;
  if (std::isfinite(a) && std::isfinite(b)) {
    const double w = b - a;
    re = {a + 0.25 * w, a + 0.5 * w, a + 0.75 * w};
  } else if (std::isfinite(a)) {
    re = {a + 0.5, a + 1.25, a + 2.0};
  } else if (std::isfinite(b)) {
    re = {b - 0.5, b - 1.25, b - 2.0};
  } else {
    re = {-1.0, 0.5, 2.0};
  }
  return {Complex(re[0], 0.0), Complex(re[1], 0.5), Complex(re[2], -0.3)};
}

TransformedPair::TransformedPair(MellinFunction function_side, ComplexMap transform_side,
                                 FundamentalStrip strip, const QuadratureConfig& cfg,
                                 double rel_tol)
    : f_(function_side.with_orders(strip.left(), strip.right())),
      F_(std::move(transform_side)),
      strip_(strip) {
  require(static_cast<bool>(F_), ErrorCode::InvalidArgument, "pair has no transform side");
  for (const Complex a : sample_points(strip_)) {
    const Complex direct = forward_mellin(f_, a, Normalization::haar(), cfg).value;
    const Complex claimed = F_(a);
    const double err = std::abs(direct - claimed);
    if (!(err <= std::max(rel_tol * std::abs(claimed), 1e-10))) {
      std::ostringstream msg;
      msg << "transform side of '" << f_.label() << "' disagrees with quadrature at alpha = "
          << a << " (" << claimed << " vs " << direct << ")";
      fail(ErrorCode::InvalidArgument, msg.str());
    }
  }
}

TransformedPair apply_rule(const TransformRule& rule, const TransformedPair& input,
                           const QuadratureConfig& cfg) {
  const MellinFunction& f = input.function_side();
  const ComplexMap F = input.transform_side();
  const FundamentalStrip s = input.strip();
  const double a = s.left(), b = s.right();
  const int n = rule.n;
  const bool cont = f.has_continuation();

  auto mapped = [&](double lo, double hi) {
    if (!(lo < hi))
      fail(ErrorCode::EmptyResultStrip, rule.name() + " maps " + s.to_string() + " to an empty strip");
    return FundamentalStrip(lo, hi);
  };
  auto needs_continuation = [&] {
    if (!cont)
      fail(ErrorCode::SideConditionViolation,
           rule.name() + " needs a complex continuation of '" + f.label() + "'");
  };

  MellinFunction::Eval eval;
  MellinFunction::ComplexEval ceval;
  ComplexMap T;
  std::optional<FundamentalStrip> strip;

  switch (rule.kind) {
    case TransformRule::Kind::Scale: {
      const double c = rule.parameter;
      eval = [f, c](double x) { return f(c * x); };
      if (cont) ceval = [f, c](Complex z) { return f(c * z); };
      T = [F, c](Complex al) { return std::exp(-al * std::log(c)) * F(al); };
      strip = s;
      break;
    }
    case TransformRule::Kind::PowerShift: {
      const double d = rule.parameter;
      eval = [f, d](double x) {
        const Complex v = f(x);
        return v == 0.0 ? v : std::pow(x, d) * v;
      };
      if (cont) ceval = [f, d](Complex z) { return std::exp(d * std::log(z)) * f(z); };
      T = [F, d](Complex al) { return F(al + d); };
      strip = mapped(a - d, b - d);
      break;
    }
    case TransformRule::Kind::PowerSubstitute: {
      const double r = rule.parameter;
      eval = [f, r](double x) { return f(std::exp(r * std::log(x))); };
      if (cont) ceval = [f, r](Complex z) { return f(std::exp(r * std::log(z))); };
      T = [F, r](Complex al) { return F(al / r) / std::abs(r); };
      strip = r > 0 ? mapped(r * a, r * b) : mapped(r * b, r * a);
      break;
    }
    case TransformRule::Kind::LogMultiply: {
      eval = [f, n](double x) {
        const Complex v = f(x);
        return v == 0.0 ? v : std::pow(std::log(x), n) * v;
      };
      if (cont) ceval = [f, n](Complex z) { return std::pow(std::log(z), n) * f(z); };
      T = [F, s, n](Complex al) {
        const double rho = std::min(0.25, 0.5 * s.margin(al));
        if (!(rho > 0.0))
          fail(ErrorCode::StripViolation, "LogMultiply derivative outside the strip");
        return cauchy_derivative(F, al, rho, n);
      };
      strip = s;
      break;
    }
    case TransformRule::Kind::EulerDerivative: {
      needs_continuation();
      eval = [f, n](double x) { return euler_derivative(f, Complex(x), n); };
      ceval = [f, n](Complex z) { return euler_derivative(f, z, n); };
      T = [F, n](Complex al) { return std::pow(-al, n) * F(al); };
      strip = s;
      break;
    }
    case TransformRule::Kind::Derivative: {
      needs_continuation();
      eval = [f, n](double x) { return x_derivative(f, Complex(x), n); };
      ceval = [f, n](Complex z) { return x_derivative(f, z, n); };
      T = [F, n](Complex al) {
        Complex p = (n % 2 == 0) ? 1.0 : -1.0;
        for (int j = 1; j <= n; ++j) p *= al - static_cast<double>(j);
        return p * F(al - static_cast<double>(n));
      };
      strip = mapped(a + n, b + n);
      break;
    }
    case TransformRule::Kind::Primitive: {
      if (!(a < 1.0))
        fail(ErrorCode::SideConditionViolation,
             "primitive from 0 diverges: '" + f.label() + "' is not integrable at 0");
      const MellinFunction::Eval fe = f.eval();
      auto real_f = [fe](Complex w) { return fe(w.real()); };
      eval = [real_f, n, cfg](double x) {
        return primitive_value(real_f, Complex(clamp_arg(x, cfg)), n, cfg);
      };
      if (cont) ceval = [f, n, cfg](Complex z) { return primitive_value(f, z, n, cfg); };
      T = [F, n](Complex al) {
        const double sign = n % 2 == 0 ? 1.0 : -1.0;
        Complex ratio = 1.0;  // Gamma(al) / Gamma(al + n)
        for (int j = 0; j < n; ++j) ratio /= al + static_cast<double>(j);
        return sign * ratio * F(al + static_cast<double>(n));
      };
      strip = mapped(a - n, std::min(b, 1.0) - n);
      break;
    }
  }

  MellinFunction g(eval, strip->left(), strip->right(), label_of(rule, f), ceval);
  try {
    return TransformedPair(g, T, *strip, cfg);
  } catch (const MellinError& e) {
    if (e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::QuadratureDivergence)
      fail(ErrorCode::SideConditionViolation, rule.name() + ": " + e.what());
    throw;
  }
}

// ---- convolutions ------------------------------------------------------------

MellinFunction mult_convolve(const MellinFunction& f, const MellinFunction& h,
                             const QuadratureConfig& cfg) {
  cfg.validate();
  const auto common = f.strip().intersect(h.strip());
  if (!common)
    fail(ErrorCode::EmptyStripIntersection,
         f.strip().to_string() + " and " + h.strip().to_string() + " do not overlap");
  const MellinFunction::Eval fe = f.eval(), he = h.eval();
  const Complex mf = f.unit_mass(), mh = h.unit_mass();
  auto eval = [fe, he, mf, mh, cfg](double x) {
    x = clamp_arg(x, cfg);
    const double t = std::log(x);
    const auto [t_min, t_max] = cfg.truncation_bounds;
    auto g = [&](double s) {
      const Complex u = fe(std::exp(s));
      if (u == 0.0) return Complex(0.0);
      const Complex v = he(std::exp(t - s));
      return v == 0.0 ? v : u * v;
    };
    // both arguments sweep the full truncation range
    const double lo = std::min(t_min, t - t_max), hi = std::max(t_max, t - t_min);
    Complex value = integrate_window(g, lo, hi, 0.5 * t, cfg).value;
    if (mf != 0.0) value += mf * he(x);
    if (mh != 0.0) value += mh * fe(x);
    return value;
  };
  return MellinFunction(eval, common->left(), common->right(),
                        "(" + f.label() + " * " + h.label() + ")", {}, mf * mh);
}

MellinFunction star_convolve(const MellinFunction& f, const MellinFunction& h,
                             const QuadratureConfig& cfg) {
  cfg.validate();
  const auto common = f.strip().intersect(h.strip().reflected());
  if (!common)
    fail(ErrorCode::EmptyStripIntersection, "no alpha with alpha in " + f.strip().to_string() +
                                                " and 1 - alpha in " + h.strip().to_string());
  const MellinFunction::Eval fe = f.eval(), he = h.eval();
  const Complex mf = f.unit_mass(), mh = h.unit_mass();
  auto eval = [fe, he, mf, mh, cfg](double x) {
    x = clamp_arg(x, cfg);
    const double t = std::log(x);
    const auto [t_min, t_max] = cfg.truncation_bounds;
    auto g = [&](double s) {
      const Complex v = he(std::exp(s));
      if (v == 0.0) return Complex(0.0);
      const Complex u = fe(std::exp(t + s));
      return u == 0.0 ? u : u * v * std::exp(s);
    };
    const double lo = std::min(t_min, t_min - t), hi = std::max(t_max, t_max - t);
    const double center = std::clamp(-std::max(t, 0.0), lo, hi);
    Complex value = integrate_window(g, lo, hi, center, cfg).value;
    if (mh != 0.0) value += mh * fe(x);
    if (mf != 0.0) value += mf * he(1.0 / x) / x;
    return value;
  };
  return MellinFunction(eval, common->left(), common->right(),
                        "(" + f.label() + " star " + h.label() + ")", {}, mf * mh);
}

MellinFunction involution(const MellinFunction& f) {
  require(f.unit_mass() == 0.0, ErrorCode::InvalidArgument,
          "involution of a function with a point mass is not supported");
  const MellinFunction::Eval fe = f.eval();
  const FundamentalStrip r = f.strip().reflected();
  return MellinFunction(
      [fe](double x) {
        const Complex v = fe(1.0 / x);
        return v == 0.0 ? v : std::conj(v) / x;
      },
      r.left(), r.right(), f.label() + "^*");
}

std::pair<Complex, Complex> parseval_pair(const MellinFunction& g, const MellinFunction& h,
                                          Complex alpha, double c, const QuadratureConfig& cfg) {
  const FundamentalStrip sg = g.strip(), sh = h.strip();
  if (!sg.contains(c) || !sh.contains(alpha - c))
    fail(ErrorCode::StripViolation, "contour Re s = " + fmt(c) +
                                        " must lie in " + sg.to_string() +
                                        " with alpha - s in " + sh.to_string());
  const MellinFunction::Eval ge = g.eval(), he = h.eval();
  const MellinFunction product(
      [ge, he](double x) {
        const Complex u = ge(x);
        return u == 0.0 ? u : u * he(x);
      },
      sg.left() + sh.left(), sg.right() + sh.right(), g.label() + "." + h.label());
  const Complex lhs = forward_mellin(product, alpha, Normalization::haar(), cfg).value;
  auto integrand = [&](Complex s) {
    const Complex G = forward_mellin(g, s, Normalization::haar(), cfg).value;
    if (G == 0.0) return G;
    return G * forward_mellin(h, alpha - s, Normalization::haar(), cfg).value;
  };
  const Complex rhs = inverse_mellin(integrand, c, 1.0, cfg);
  return {lhs, rhs};
}

// ---- convolution exponential -------------------------------------------------

namespace {

std::size_t grid_size(const ConvolutionGrid& g) {
  require(g.step > 0.0 && g.t_min < 0.0 && g.t_max > 0.0, ErrorCode::InvalidArgument,
          "bad convolution grid");
  const double offset = -g.t_min / g.step;
  require(std::abs(offset - std::round(offset)) < 1e-9, ErrorCode::InvalidArgument,
          "grid step must divide t_min");
  return static_cast<std::size_t>(std::lround((g.t_max - g.t_min) / g.step)) + 1;
}

Complex interpolate(const std::vector<Complex>& v, const ConvolutionGrid& g, double t) {
  const int K = static_cast<int>(v.size());
  if (t <= g.t_min) return v.front();
  const double p = (t - g.t_min) / g.step;
  if (p > K - 1) return 0.0;
  constexpr int kPoints = 8;
  const int start = std::clamp(static_cast<int>(std::floor(p)) - kPoints / 2 + 1, 0, K - kPoints);
  Complex sum = 0.0;
  for (int j = 0; j < kPoints; ++j) {
    double w = 1.0;
    for (int m = 0; m < kPoints; ++m)
      if (m != j) w *= (p - (start + m)) / static_cast<double>(j - m);
    sum += w * v[start + j];
  }
  return sum;
}

Complex trapezoid_transform(const std::vector<Complex>& v, const ConvolutionGrid& g,
                            Complex alpha) {
  Complex sum = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0.0) continue;
    sum += v[k] * std::exp(alpha * (g.t_min + static_cast<double>(k) * g.step));
  }
  return sum * g.step;
}

}  // namespace

ConvolutionPowers::ConvolutionPowers(const MellinFunction& h, int max_power,
                                     const ConvolutionGrid& grid)
    : grid_(grid) {
  require(max_power >= 0, ErrorCode::InvalidArgument, "number of powers must be nonnegative");
  require(h.unit_mass() == 0.0, ErrorCode::InvalidArgument,
          "convolution powers of a point mass are not tabulated");
  require(grid.divergence_bound > 0.0, ErrorCode::InvalidArgument, "bad divergence bound");
  const std::size_t K = grid_size(grid_);
  if (max_power == 0) return;
  const long offset = std::lround(-grid_.t_min / grid_.step);
  const Complex probe = h.strip().interior_point();

  std::vector<Complex> H(K);
  for (std::size_t k = 0; k < K; ++k)
    H[k] = h(std::exp(grid_.t_min + static_cast<double>(k) * grid_.step));
  auto check = [&](const std::vector<Complex>& v, int power) {
    for (const Complex& z : v)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        fail(ErrorCode::DivergentStage, "power " + std::to_string(power) + " is not finite");
    const double m = std::abs(trapezoid_transform(v, grid_, probe));
    if (!(m <= grid_.divergence_bound))
      fail(ErrorCode::DivergentStage, "transform of power " + std::to_string(power) +
                                          " at the probe point is " + fmt(m));
  };
  check(H, 1);
  stages_.push_back(H);

  // nonzero range of H, to skip dead terms
  std::size_t j_lo = 0, j_hi = K;
  while (j_lo < K && H[j_lo] == 0.0) ++j_lo;
  while (j_hi > j_lo && H[j_hi - 1] == 0.0) --j_hi;

  for (int p = 2; p <= max_power; ++p) {
    const std::vector<Complex>& prev = stages_.back();
    std::vector<Complex> next(K);
    for (std::size_t k = 0; k < K; ++k) {
      Complex acc = 0.0;
      for (std::size_t j = j_lo; j < j_hi; ++j) {
        const long m = static_cast<long>(k) - static_cast<long>(j) + offset;
        if (m >= static_cast<long>(K)) continue;
        acc += H[j] * prev[m < 0 ? 0 : m];
      }
      next[k] = acc * grid_.step;
    }
    check(next, p);
    stages_.push_back(std::move(next));
  }
}

Complex ConvolutionPowers::grid_transform(int power, Complex alpha) const {
  return trapezoid_transform(stage(power), grid_, alpha);
}

Complex ConvolutionSeries::operator()(double x) const {
  return interpolate(*values, grid, std::log(x));
}

Complex ConvolutionSeries::grid_transform(Complex alpha) const {
  return trapezoid_transform(*values, grid, alpha);
}

ConvolutionSeries convolution_series(const MellinFunction& h, int terms,
                                     const ConvolutionGrid& grid) {
  require(terms >= 0, ErrorCode::InvalidArgument, "terms must be nonnegative");
  const ConvolutionPowers powers(h, terms, grid);
  std::vector<Complex> sum(grid_size(grid), 0.0);
  double coeff = 1.0;
  for (int n = 1; n <= terms; ++n) {
    coeff *= -1.0 / n;
    const auto& st = powers.stage(n);
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += coeff * st[k];
  }
  return {std::make_shared<const std::vector<Complex>>(std::move(sum)), grid};
}

MellinFunction convolution_exp(const MellinFunction& h, int terms, const QuadratureConfig& cfg,
                               const ConvolutionGrid& grid) {
  cfg.validate();
  const ConvolutionSeries series = convolution_series(h, terms, grid);
  return MellinFunction([series](double x) { return series(x); }, h.order_at_zero(),
                        h.order_at_infinity(), "exp*(-" + h.label() + ")", {}, 1.0);
}

}  // namespace mellinium
