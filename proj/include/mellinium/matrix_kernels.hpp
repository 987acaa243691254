#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace mellinium {

// Small Eigen kernels shared by the operator layer. They are written against
// MatrixBase so they take blocks, maps and fixed-size types alike.

/// Largest entry of |m - m^H|.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real hermitian_defect(
    const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// V diag(fn(lambda_i)) V^H for a unitary V.
template <typename DerivedV, typename DerivedL, typename Fn>
Eigen::Matrix<typename DerivedV::Scalar, Eigen::Dynamic, Eigen::Dynamic> spectral_apply(
    const Eigen::MatrixBase<DerivedV>& vectors, const Eigen::MatrixBase<DerivedL>& values, Fn fn) {
  using Scalar = typename DerivedV::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> mapped(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) mapped(i) = fn(values(i));
  return vectors * mapped.asDiagonal() * vectors.adjoint();
}

/// diag(fn(lambda_i)) when the eigenbasis is the standard one.
template <typename DerivedL, typename Fn>
Eigen::Matrix<std::complex<typename Eigen::NumTraits<typename DerivedL::Scalar>::Real>,
              Eigen::Dynamic, Eigen::Dynamic>
diagonal_apply(const Eigen::MatrixBase<DerivedL>& values, Fn fn) {
  using Real = typename Eigen::NumTraits<typename DerivedL::Scalar>::Real;
  Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1> mapped(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) mapped(i) = fn(values(i));
  return mapped.asDiagonal();
}

/// lambda^{-alpha} on the branch log(lambda) + 2 pi i n.
template <typename Real>
std::complex<Real> branch_power(std::complex<Real> lambda, std::complex<Real> alpha, int winding) {
  const Real two_pi = Real(2) * Real(3.14159265358979323846264338327950288L);
  const std::complex<Real> log_l = std::log(lambda) + std::complex<Real>(0, two_pi * winding);
  return std::exp(-alpha * log_l);
}

/// Richardson table on samples d(h_k), h_k = h0 / 2^k (largest step first),
/// eliminating h, h^2, ... in turn. T is a scalar or any Eigen matrix.
template <typename T>
T richardson_limit(std::vector<T> t) {
  const std::size_t n = t.size();
  for (std::size_t j = 1; j < n; ++j) {
    const double f = std::ldexp(1.0, static_cast<int>(j));
    for (std::size_t i = n - 1; i >= j; --i) {
      T next = (f * t[i] - t[i - 1]) / (f - 1.0);
      t[i] = next;
    }
  }
  return t[n - 1];
}

}  // namespace mellinium
