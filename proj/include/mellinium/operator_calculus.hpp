#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "mellinium/matrix_kernels.hpp"
#include "mellinium/quadrature.hpp"
#include "mellinium/strip.hpp"

namespace mellinium {

/// A positive operator given either as a Hermitian matrix or by its spectrum.
class OperatorSpec {
 public:
  /// Hermitian to 1e-12 (relative to the largest entry) with positive
  /// eigenvalues, else NotPositiveDefinite.
  static OperatorSpec from_matrix(const Eigen::MatrixXcd& m);
  /// Ascending, strictly positive entries.
  static OperatorSpec from_spectrum(std::vector<double> spectrum);

  int dimension() const noexcept { return static_cast<int>(values_.size()); }
  bool has_matrix() const noexcept { return vectors_.size() != 0; }
  /// Ascending eigenvalues.
  const Eigen::VectorXd& eigenvalues() const noexcept { return values_; }
  /// The matrix itself; diagonal for the spectrum form.
  Eigen::MatrixXcd matrix() const;

  /// V diag(fn(lambda)) V^H in the operator's eigenbasis.
  template <typename Fn>
  Eigen::MatrixXcd apply(Fn fn) const;

 private:
  OperatorSpec() = default;
  Eigen::VectorXd values_;
  Eigen::MatrixXcd vectors_;  // empty for the spectrum form
};

struct PhaseConvention {
  /// Each logarithm is taken on the branch Log + 2 pi i winding.
  int winding = 0;
};

/// Fixed Hermitian positive-definite element against which determinants are
/// normalised.
class Regulator {
 public:
  explicit Regulator(const Eigen::MatrixXcd& r);
  const OperatorSpec& op() const noexcept { return op_; }

 private:
  OperatorSpec op_;
};

/// beta^{-alpha}, with the Gamma normalisation absorbed.
Eigen::MatrixXcd complex_power(const OperatorSpec& op, Complex alpha,
                               const PhaseConvention& conv = {});

/// (beta - z)^{-alpha}. SpectrumCollision when z sits on an eigenvalue,
/// ConvergenceDomain when some Re(lambda - z) <= 0.
Eigen::MatrixXcd resolvent(const OperatorSpec& op, Complex z, Complex alpha,
                           const PhaseConvention& conv = {});

enum class ZetaRoute { Direct, HeatTraceMellin };

/// tr beta^{-alpha}, directly or as the Gamma-normalised transform of the heat
/// trace sum_i exp(-lambda_i g) on <0, inf>.
Complex spectral_zeta(const OperatorSpec& op, Complex alpha, ZetaRoute route = ZetaRoute::Direct,
                      const QuadratureConfig& cfg = {});

/// Alternating trace sum_i (-1)^{i+1} lambda_i^{-alpha} through the transform
/// of the alternating heat trace; QuadratureDivergence if it disagrees with
/// the direct alternating sum.
Complex spectral_eta(const OperatorSpec& op, Complex alpha, const QuadratureConfig& cfg = {});

/// d/dalpha beta^{-alpha} at 0+, from centred differences at alpha = h, h/2,
/// h/4, h/8 extrapolated to 0. Approximates -log beta.
Eigen::MatrixXcd functional_log(const OperatorSpec& op, double h = 1e-3);

/// |det beta^{-1}|^alpha e^{i phi(alpha)}, phi = alpha (arg det beta^{-1} +
/// 2 pi n). With a regulator the ratio against det R^{-1} is returned.
Complex functional_determinant(const OperatorSpec& op, Complex alpha,
                               const PhaseConvention& conv = {},
                               const std::optional<Regulator>& reg = std::nullopt);

/// Det(A)^{-alpha} Det(B)^{-alpha} / Det(AB)^{-alpha} with principal phases
/// (plus the convention's winding); exactly 1 when no branch is crossed.
/// ConvergenceDomain if a determinant is zero or on the negative real axis.
Complex anomaly_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, Complex alpha,
                      const PhaseConvention& conv = {});
Complex anomaly_phase(Complex a, Complex b, Complex alpha, const PhaseConvention& conv = {});

struct KeyIdentity {
  Complex lhs;
  Complex rhs;
  double bound;
};

/// lhs = exp(-zeta(alpha)); rhs = transform at alpha of the convolution
/// exponential of h(g) = sum_i exp(-lambda_i g) / Gamma(alpha); bound is the
/// series truncation term plus the quadrature estimate.
KeyIdentity key_identity_check(const OperatorSpec& op, Complex alpha, int terms,
                               const QuadratureConfig& cfg = {});

template <typename Fn>
Eigen::MatrixXcd OperatorSpec::apply(Fn fn) const {
  if (has_matrix()) return spectral_apply(vectors_, values_, fn);
  return diagonal_apply(values_, fn);
}

}  // namespace mellinium
