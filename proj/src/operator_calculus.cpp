#include "mellinium/operator_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "mellinium/errors.hpp"
#include "mellinium/mellin_core.hpp"
#include "mellinium/mellin_function.hpp"
#include "mellinium/normalization.hpp"
#include "mellinium/special.hpp"
#include "mellinium/strip_algebra.hpp"

namespace mellinium {
namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kCollisionTol = 1e-12;
constexpr int kKeyIdentityMaxDim = 4;

std::string str(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

std::string str(Complex z) {
  std::ostringstream s;
  s.precision(10);
  s << z.real();
  if (z.imag() != 0.0) s << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return s.str();
}

// Sum of fn(lambda_i), smallest magnitudes first (largest eigenvalues first).
template <typename Fn>
Complex trace_sum(const Eigen::VectorXd& values, Fn fn) {
  Complex sum = 0.0;
  for (Eigen::Index i = values.size() - 1; i >= 0; --i) sum += fn(i, values(i));
  return sum;
}

double log_det(const OperatorSpec& op) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < op.eigenvalues().size(); ++i) s += std::log(op.eigenvalues()(i));
  if (!std::isfinite(s)) fail(ErrorCode::ZeroDeterminant, "log det is not finite");
  return s;
}

void check_square(const Eigen::MatrixXcd& m, const char* what) {
  require(m.rows() > 0 && m.rows() == m.cols(), ErrorCode::InvalidArgument,
          std::string(what) + " must be a non-empty square matrix");
  require(m.allFinite(), ErrorCode::InvalidArgument, std::string(what) + " has non-finite entries");
}

}  // namespace

OperatorSpec OperatorSpec::from_matrix(const Eigen::MatrixXcd& m) {
  check_square(m, "operator");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double defect = hermitian_defect(m);
  if (defect > kHermitianTol * scale)
    fail(ErrorCode::NotPositiveDefinite, "matrix is not Hermitian (defect " + str(defect) + ")");
  const Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  if (es.info() != Eigen::Success) fail(ErrorCode::NotPositiveDefinite, "eigensolver failed");
  if (!(es.eigenvalues().minCoeff() > 0.0))
    fail(ErrorCode::NotPositiveDefinite,
         "smallest eigenvalue " + str(es.eigenvalues().minCoeff()) + " is not positive");
  OperatorSpec op;
  op.values_ = es.eigenvalues();
  op.vectors_ = es.eigenvectors();
  return op;
}

OperatorSpec OperatorSpec::from_spectrum(std::vector<double> spectrum) {
  require(!spectrum.empty(), ErrorCode::InvalidArgument, "spectrum is empty");
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    require(std::isfinite(spectrum[i]), ErrorCode::InvalidArgument, "spectrum entry not finite");
    if (!(spectrum[i] > 0.0))
      fail(ErrorCode::NotPositiveDefinite, "spectrum entry " + str(spectrum[i]) + " is not positive");
    require(i == 0 || spectrum[i] >= spectrum[i - 1], ErrorCode::InvalidArgument,
            "spectrum must be ascending");
  }
  OperatorSpec op;
  op.values_ = Eigen::Map<const Eigen::VectorXd>(spectrum.data(), spectrum.size());
  return op;
}

Eigen::MatrixXcd OperatorSpec::matrix() const {
  return apply([](double l) { return Complex(l); });
}

Regulator::Regulator(const Eigen::MatrixXcd& r) : op_(OperatorSpec::from_matrix(r)) {}

Eigen::MatrixXcd complex_power(const OperatorSpec& op, Complex alpha, const PhaseConvention& conv) {
  return op.apply([&](double l) { return branch_power(Complex(l) - 0.0, alpha, conv.winding); });
}

Eigen::MatrixXcd resolvent(const OperatorSpec& op, Complex z, Complex alpha,
                           const PhaseConvention& conv) {
  for (Eigen::Index i = 0; i < op.eigenvalues().size(); ++i) {
    const double l = op.eigenvalues()(i);
    const Complex d = Complex(l) - z;
    if (std::abs(d) < kCollisionTol * std::max(1.0, l))
      fail(ErrorCode::SpectrumCollision, "z = " + str(z) + " hits the eigenvalue " + str(l));
    if (!(d.real() > 0.0))
      fail(ErrorCode::ConvergenceDomain,
           "Re(lambda - z) = " + str(d.real()) + " <= 0 at lambda = " + str(l));
  }
  return op.apply([&](double l) { return branch_power(Complex(l) - z, alpha, conv.winding); });
}

Complex spectral_zeta(const OperatorSpec& op, Complex alpha, ZetaRoute route,
                      const QuadratureConfig& cfg) {
  const Eigen::VectorXd values = op.eigenvalues();
  if (route == ZetaRoute::Direct)
    return trace_sum(values, [&](Eigen::Index, double l) { return std::exp(-alpha * std::log(l)); });
  const MellinFunction heat(
      [values](double g) {
        return trace_sum(values, [g](Eigen::Index, double l) { return Complex(std::exp(-l * g)); });
      },
      0.0, kInf, "heat_trace");
  return forward_mellin(heat, alpha, Normalization::gamma(), cfg).value;
}

Complex spectral_eta(const OperatorSpec& op, Complex alpha, const QuadratureConfig& cfg) {
  const Eigen::VectorXd values = op.eigenvalues();
  auto sign = [](Eigen::Index i) { return i % 2 == 0 ? 1.0 : -1.0; };
  const MellinFunction heat(
      [values, sign](double g) {
        return trace_sum(values, [&](Eigen::Index i, double l) {
          return Complex(sign(i) * std::exp(-l * g));
        });
      },
      0.0, kInf, "alternating_heat_trace");
  const Complex via_mellin = forward_mellin(heat, alpha, Normalization::gamma(), cfg).value;
  const Complex direct = trace_sum(
      values, [&](Eigen::Index i, double l) { return sign(i) * std::exp(-alpha * std::log(l)); });
  if (std::abs(via_mellin - direct) > 1e-7 * std::max(1.0, std::abs(direct)))
    fail(ErrorCode::QuadratureDivergence, "alternating heat trace transform " + str(via_mellin) +
                                              " disagrees with the direct sum " + str(direct));
  return via_mellin;
}

Eigen::MatrixXcd functional_log(const OperatorSpec& op, double h) {
  require(h > 0.0 && h < 1.0, ErrorCode::InvalidArgument, "step must lie in (0, 1)");
  constexpr int kLevels = 4;
  std::vector<Eigen::MatrixXcd> samples;
  double a = h;
  for (int k = 0; k < kLevels; ++k, a *= 0.5)
    samples.push_back((complex_power(op, 1.5 * a) - complex_power(op, 0.5 * a)) / a);
  return richardson_limit(samples);
}

Complex functional_determinant(const OperatorSpec& op, Complex alpha, const PhaseConvention& conv,
                               const std::optional<Regulator>& reg) {
  // Hermitian positive operators have arg det = 0, so only the winding
  // contributes to the phase
  double log_abs = -log_det(op);
  if (reg) {
    require(reg->op().dimension() == op.dimension(), ErrorCode::InvalidArgument,
            "regulator dimension differs from the operator's");
    log_abs += log_det(reg->op());
  }
  const Complex phase(0.0, 2.0 * kPi * conv.winding);
  return std::exp(alpha * (log_abs + phase));
}

Complex anomaly_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, Complex alpha,
                      const PhaseConvention& conv) {
  check_square(a, "first operand");
  check_square(b, "second operand");
  require(a.rows() == b.rows(), ErrorCode::InvalidArgument, "operands differ in dimension");
  const Complex dets[3] = {a.determinant(), b.determinant(), (a * b).determinant()};
  double args[3];
  for (int i = 0; i < 3; ++i) {
    const Complex d = dets[i];
    if (!(std::abs(d) > 0.0) || !std::isfinite(std::abs(d)))
      fail(ErrorCode::ConvergenceDomain, "determinant " + str(d) + " is zero or not finite");
    if (d.real() < 0.0 && std::abs(d.imag()) <= 1e-14 * std::abs(d))
      fail(ErrorCode::ConvergenceDomain,
           "determinant " + str(d) + " lies on the branch cut of the principal argument");
    args[i] = -std::arg(d);  // arg of det^{-1}
  }
  const long k = std::lround((args[0] + args[1] - args[2]) / (2.0 * kPi)) + conv.winding;
  if (k == 0) return 1.0;
  return std::exp(Complex(0.0, 2.0 * kPi * static_cast<double>(k)) * alpha);
}

Complex anomaly_phase(Complex a, Complex b, Complex alpha, const PhaseConvention& conv) {
  return anomaly_phase(Eigen::MatrixXcd::Constant(1, 1, a), Eigen::MatrixXcd::Constant(1, 1, b),
                       alpha, conv);
}

KeyIdentity key_identity_check(const OperatorSpec& op, Complex alpha, int terms,
                               const QuadratureConfig& cfg) {
  require(op.dimension() <= kKeyIdentityMaxDim, ErrorCode::InvalidArgument,
          "key identity check is limited to dimension <= 4");
  require(terms >= 0, ErrorCode::InvalidArgument, "terms must be nonnegative");
  if (!(alpha.real() > 0.0))
    fail(ErrorCode::StripViolation, "alpha = " + str(alpha) + " outside <0, inf>");
  const Complex zeta = spectral_zeta(op, alpha, ZetaRoute::Direct);
  // Gamma normalisation moved into the function: its Haar transform is zeta
  const Complex scale = rgamma(alpha);
  const Eigen::VectorXd values = op.eigenvalues();
  const MellinFunction h(
      [values, scale](double g) {
        return scale *
               trace_sum(values, [g](Eigen::Index, double l) { return Complex(std::exp(-l * g)); });
      },
      0.0, kInf, "heat_trace/Gamma");
  const MellinFunction series = convolution_exp(h, terms, cfg);
  const TransformValue tv = forward_mellin(series, alpha, Normalization::haar(), cfg);
  double trunc = std::pow(std::abs(zeta), terms + 1);
  for (int n = 2; n <= terms + 1; ++n) trunc /= n;
  return {std::exp(-zeta), tv.value, trunc + tv.abs_error_estimate};
}

}  // namespace mellinium
