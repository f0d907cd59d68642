#include "commonbath/sampling.hpp"

#include <cmath>

#include <Eigen/QR>

namespace commonbath {

double Sampler::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

double Sampler::normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

Eigen::Vector2cd Sampler::qubit() {
  Eigen::Vector2cd v;
  for (int k = 0; k < 2; ++k) v(k) = Complex(normal(), normal());
  return v.normalized();
}

ComplexMatrix4 Sampler::mixed_state() {
  ComplexMatrix4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = Complex(normal(), normal());
  const ComplexMatrix4 rho = g * g.adjoint();
  return rho / rho.trace().real();
}

ComplexMatrix4 Sampler::pure_product() { return product_state(qubit(), qubit()); }

ComplexMatrix4 Sampler::symmetric_state() {
  ComplexMatrix4 swap = ComplexMatrix4::Zero();
  swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
  const ComplexMatrix4 rho = mixed_state();
  return 0.5 * (rho + swap * rho * swap);
}

PauliCoefficients Sampler::coefficients() {
  PauliCoefficients c;
  for (int i = 0; i < 3; ++i) {
    c.r0i(i) = uniform(-1, 1);
    c.ri0(i) = uniform(-1, 1);
    for (int j = 0; j < 3; ++j) c.rij(i, j) = uniform(-1, 1);
  }
  return c;
}

RealMatrix3 Sampler::rotation() {
  RealMatrix3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = normal();
  Eigen::HouseholderQR<RealMatrix3> qr(g);
  RealMatrix3 q = qr.householderQ();
  const RealMatrix3 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < 3; ++k)
    if (r(k, k) < 0) q.col(k) *= -1.0;
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

KossakowskiBlock Sampler::generic_bath() {
  ComplexMatrix3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = Complex(normal(), normal()) / std::sqrt(6.0);
  const ComplexMatrix3 calA = g * g.adjoint();
  const RealMatrix3 A = calA.real();
  // Im calA_ij = eps_ijk B_k.
  const RealVector3 B(calA(1, 2).imag(), calA(2, 0).imag(), calA(0, 1).imag());
  return make_bath(0.5 * (A + A.transpose()), B);
}

KossakowskiBlock Sampler::aligned_bath(double lambda_lo, double lambda_hi, double max_fill) {
  RealVector3 lam(uniform(lambda_lo, lambda_hi), uniform(lambda_lo, lambda_hi), uniform(lambda_lo, lambda_hi));
  const double fill = uniform(0.0, max_fill);
  const double sign = uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0;
  const double b = sign * std::sqrt(fill * lam(0) * lam(1));
  const RealMatrix3 o = rotation();
  // Frame quantities (diag(lam), b e_3) rotated into the input frame.
  const RealMatrix3 A = o.transpose() * lam.asDiagonal() * o;
  const RealVector3 B = o.transpose() * RealVector3(0.0, 0.0, b);
  return make_bath(0.5 * (A + A.transpose()), B);
}

}  // namespace commonbath
