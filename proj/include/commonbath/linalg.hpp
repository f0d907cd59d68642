#ifndef COMMONBATH_LINALG_HPP
#define COMMONBATH_LINALG_HPP

#include <Eigen/Eigenvalues>

#include "commonbath/types.hpp"

namespace commonbath {

ComplexMatrix4 kron(const Mat2& a, const Mat2& b);

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

template <typename Derived>
double hermiticity_error(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline ComplexMatrix4 commutator(const ComplexMatrix4& a, const ComplexMatrix4& b) {
  return a * b - b * a;
}

inline ComplexMatrix4 anticommutator(const ComplexMatrix4& a, const ComplexMatrix4& b) {
  return a * b + b * a;
}

/// Ascending eigenvalues of the Hermitian part of `m`.
template <typename Matrix>
auto hermitian_eigenvalues(const Matrix& m) {
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().eval();
}

template <typename Matrix>
double min_eigenvalue(const Matrix& m) {
  return hermitian_eigenvalues(m).minCoeff();
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues are clamped at zero first, so round-off negatives near a
/// rank-deficient boundary do not produce NaNs.
template <typename Matrix>
Matrix psd_sqrt(const Matrix& m) {
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  auto roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().eval();
  return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

/// Half the trace norm of a - b.
double trace_distance(const ComplexMatrix4& a, const ComplexMatrix4& b);

}  // namespace commonbath

#endif  // COMMONBATH_LINALG_HPP
