#ifndef COMMONBATH_TYPES_HPP
#define COMMONBATH_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace commonbath {

using Complex = std::complex<double>;

using Mat2 = Eigen::Matrix2cd;
/// Operator on the two-qubit space, computational basis |ab> at index 2a+b.
using ComplexMatrix4 = Eigen::Matrix4cd;
using ComplexMatrix3 = Eigen::Matrix3cd;
using ComplexMatrix6 = Eigen::Matrix<Complex, 6, 6>;
using RealMatrix3 = Eigen::Matrix3d;
using RealVector3 = Eigen::Vector3d;
using RealVector4 = Eigen::Vector4d;

/// The 15 real expansion coefficients flattened in storage order
/// (r01 r02 r03 r10 r20 r30 r11 r12 r13 r21 r22 r23 r31 r32 r33).
using CoefficientVector = Eigen::Matrix<double, 15, 1>;
using CoefficientMatrix = Eigen::Matrix<double, 15, 15>;

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the domain of an operation (invalid bath, bad state, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The fixed-step integrator left the positive cone beyond tolerance.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

/// Closed-form stationary results need B along a principal axis of A.
class NotApplicableError : public Error {
 public:
  using Error::Error;
};

}  // namespace commonbath

#endif  // COMMONBATH_TYPES_HPP
