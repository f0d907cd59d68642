#include "commonbath/pauli_algebra.hpp"

#include <cmath>
#include <sstream>

#include "commonbath/linalg.hpp"

namespace commonbath {

namespace {

constexpr Complex kI{0.0, 1.0};

double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

}  // namespace

int levi_civita(int i, int j, int k) {
  if (i < 0 || j < 0 || k < 0 || i >= kAxes || j >= kAxes || k >= kAxes) return 0;
  if (i == j || j == k || i == k) return 0;
  // Even permutations of (0,1,2) are the cyclic shifts.
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

OperatorBasis build_basis() {
  OperatorBasis b;
  b.sigma[0] << 0, 1, 1, 0;
  b.sigma[1] << 0, -kI, kI, 0;
  b.sigma[2] << 1, 0, 0, -1;
  const Mat2 id = Mat2::Identity();

  for (int i = 0; i < kAxes; ++i) {
    b.first[i] = kron(b.sigma[i], id);
    b.second[i] = kron(id, b.sigma[i]);
    b.collective[i] = b.first[i] + b.second[i];
  }
  b.sym_total.setZero();
  for (int i = 0; i < kAxes; ++i) {
    for (int j = 0; j < kAxes; ++j)
      b.sym[i][j] = kron(b.sigma[i], b.sigma[j]) + kron(b.sigma[j], b.sigma[i]);
    b.sym_total += b.sym[i][i];
  }
  b.singlet = 0.25 * (ComplexMatrix4::Identity() - 0.5 * b.sym_total);
  b.triplet = ComplexMatrix4::Identity() - b.singlet;
  return b;
}

const OperatorBasis& basis() {
  static const OperatorBasis instance = build_basis();
  return instance;
}

CoefficientVector PauliCoefficients::flatten() const {
  CoefficientVector v;
  v.segment<3>(0) = r0i;
  v.segment<3>(3) = ri0;
  for (int i = 0; i < kAxes; ++i)
    for (int j = 0; j < kAxes; ++j) v(6 + 3 * i + j) = rij(i, j);
  return v;
}

PauliCoefficients PauliCoefficients::unflatten(const CoefficientVector& v) {
  PauliCoefficients c;
  c.r0i = v.segment<3>(0);
  c.ri0 = v.segment<3>(3);
  for (int i = 0; i < kAxes; ++i)
    for (int j = 0; j < kAxes; ++j) c.rij(i, j) = v(6 + 3 * i + j);
  return c;
}

PauliCoefficients& PauliCoefficients::operator+=(const PauliCoefficients& o) {
  r0i += o.r0i;
  ri0 += o.ri0;
  rij += o.rij;
  return *this;
}

PauliCoefficients& PauliCoefficients::operator*=(double s) {
  r0i *= s;
  ri0 *= s;
  rij *= s;
  return *this;
}

PauliCoefficients operator+(PauliCoefficients a, const PauliCoefficients& b) { return a += b; }

PauliCoefficients operator-(PauliCoefficients a, const PauliCoefficients& b) {
  a.r0i -= b.r0i;
  a.ri0 -= b.ri0;
  a.rij -= b.rij;
  return a;
}

PauliCoefficients operator*(double s, PauliCoefficients a) { return a *= s; }

const std::array<const char*, 15>& coefficient_labels() {
  static const std::array<const char*, 15> labels = {
      "r01", "r02", "r03", "r10", "r20", "r30", "r11", "r12",
      "r13", "r21", "r22", "r23", "r31", "r32", "r33"};
  return labels;
}

double tau_of(const PauliCoefficients& c) { return c.tau(); }

StateDiagnostics diagnose(const ComplexMatrix4& m) {
  StateDiagnostics d;
  d.hermiticity_error = hermiticity_error(m);
  d.trace_error = std::abs(m.trace() - 1.0);
  d.min_eigenvalue = min_eigenvalue(m);
  return d;
}

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix4& m) {
  const StateDiagnostics d = diagnose(m);
  if (!d.is_state()) {
    std::ostringstream msg;
    msg << "not a density matrix:";
    if (!d.hermitian()) msg << " hermiticity error " << d.hermiticity_error;
    if (!d.unit_trace()) msg << " trace error " << d.trace_error;
    if (!d.positive()) msg << " min eigenvalue " << d.min_eigenvalue;
    throw ValidationError(msg.str());
  }
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::from_coefficients(const PauliCoefficients& c) {
  return from_matrix(to_matrix(c));
}

ComplexMatrix4 to_matrix(const PauliCoefficients& c, double identity_weight) {
  const OperatorBasis& b = basis();
  ComplexMatrix4 m = identity_weight * ComplexMatrix4::Identity();
  for (int i = 0; i < kAxes; ++i) {
    m += c.r0i(i) * b.second[i] + c.ri0(i) * b.first[i];
    for (int j = 0; j < kAxes; ++j) m += c.rij(i, j) * kron(b.sigma[i], b.sigma[j]);
  }
  return 0.25 * m;
}

CoefficientReadout to_coefficients(const ComplexMatrix4& m) {
  const OperatorBasis& b = basis();
  CoefficientReadout out;
  for (int i = 0; i < kAxes; ++i) {
    out.coefficients.r0i(i) = (m * b.second[i]).trace().real();
    out.coefficients.ri0(i) = (m * b.first[i]).trace().real();
    for (int j = 0; j < kAxes; ++j)
      out.coefficients.rij(i, j) = (m * kron(b.sigma[i], b.sigma[j])).trace().real();
  }
  out.trace_error = m.trace().real() - 1.0;
  return out;
}

ComplexMatrix4 product_state(const Eigen::Vector2cd& phi, const Eigen::Vector2cd& psi) {
  const Mat2 a = phi * phi.adjoint();
  const Mat2 c = psi * psi.adjoint();
  return kron(a, c);
}

ComplexMatrix4 werner_state(double s) {
  const OperatorBasis& b = basis();
  return (s / 3.0) * b.triplet + (1.0 - s) * b.singlet;
}

double check_appendix_algebra(LeviCivitaFn eps) {
  const OperatorBasis& b = basis();
  const auto& Sg = b.collective;
  const auto& S = b.sym;
  const ComplexMatrix4 id = ComplexMatrix4::Identity();
  double worst = 0.0;

  for (int i = 0; i < kAxes; ++i) {
    for (int j = 0; j < kAxes; ++j) {
      ComplexMatrix4 rhs = 2.0 * delta(i, j) * id + S[i][j];
      for (int k = 0; k < kAxes; ++k) rhs += kI * double(eps(i, j, k)) * Sg[k];
      worst = std::max(worst, max_abs(Sg[i] * Sg[j] - rhs));

      for (int k = 0; k < kAxes; ++k) {
        ComplexMatrix4 mixed = ComplexMatrix4::Zero();
        for (int l = 0; l < kAxes; ++l)
          mixed += kI * (double(eps(i, k, l)) * S[l][j] + double(eps(j, k, l)) * S[i][l]);
        const ComplexMatrix4 local = delta(i, k) * Sg[j] + delta(j, k) * Sg[i];
        worst = std::max(worst, max_abs(S[i][j] * Sg[k] - (local + mixed)));
        worst = std::max(worst, max_abs(Sg[k] * S[i][j] - (local - mixed)));

        for (int l = 0; l < kAxes; ++l) {
          ComplexMatrix4 r = 2.0 * (delta(i, k) * delta(j, l) + delta(i, l) * delta(j, k)) * id;
          for (int q = 0; q < kAxes; ++q) {
            const double c = delta(i, k) * eps(j, l, q) + delta(j, k) * eps(i, l, q) +
                             delta(i, l) * eps(j, k, q) + delta(j, l) * eps(i, k, q);
            r += kI * c * Sg[q];
          }
          r -= (2.0 * delta(i, j) * delta(k, l) - delta(i, k) * delta(j, l) -
                delta(i, l) * delta(j, k)) *
               b.sym_total;
          r += 2.0 * (delta(i, j) * S[k][l] + delta(k, l) * S[i][j]);
          r -= delta(i, k) * S[j][l] + delta(i, l) * S[j][k] + delta(j, k) * S[i][l] +
               delta(j, l) * S[i][k];
          worst = std::max(worst, max_abs(S[i][j] * S[k][l] - r));
        }
      }
    }
  }
  return worst;
}

}  // namespace commonbath
