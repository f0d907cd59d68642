#ifndef COMMONBATH_PAULI_ALGEBRA_HPP
#define COMMONBATH_PAULI_ALGEBRA_HPP

#include <array>

#include "commonbath/types.hpp"

namespace commonbath {

// Index convention: the Pauli axes x, y, z are written 1..3 in documentation
// and stored at 0..2 everywhere in code. Every module goes through this header
// for axis indexing and for the Levi-Civita symbol.

inline constexpr int kAxes = 3;

/// Levi-Civita symbol on 0-based axes; returns 0 for any repeated or
/// out-of-range index.
int levi_civita(int i, int j, int k);

using LeviCivitaFn = int (*)(int, int, int);

/// Fixed operator basis of the two-qubit problem.
struct OperatorBasis {
  std::array<Mat2, 3> sigma;             ///< Pauli matrices
  std::array<ComplexMatrix4, 3> first;   ///< sigma_i (x) 1
  std::array<ComplexMatrix4, 3> second;  ///< 1 (x) sigma_i
  /// Collective operators sigma_i (x) 1 + 1 (x) sigma_i.
  std::array<ComplexMatrix4, 3> collective;
  /// Symmetrized products sigma_i (x) sigma_j + sigma_j (x) sigma_i.
  std::array<std::array<ComplexMatrix4, 3>, 3> sym;
  ComplexMatrix4 sym_total;  ///< sum_i sym[i][i]
  ComplexMatrix4 singlet;    ///< P = 1/4 (1 - sym_total / 2), rank one
  ComplexMatrix4 triplet;    ///< Q = 1 - P
};

OperatorBasis build_basis();

/// Process-wide immutable instance of build_basis().
const OperatorBasis& basis();

/// Real coefficients of the expansion
///   rho = 1/4 [1 + r0i (1 x s_i) + ri0 (s_i x 1) + rij (s_i x s_j)].
struct PauliCoefficients {
  RealVector3 r0i = RealVector3::Zero();
  RealVector3 ri0 = RealVector3::Zero();
  RealMatrix3 rij = RealMatrix3::Zero();

  /// Trace of the correlation block; conserved by the equal-block dynamics.
  double tau() const { return rij.trace(); }

  CoefficientVector flatten() const;
  static PauliCoefficients unflatten(const CoefficientVector& v);

  PauliCoefficients& operator+=(const PauliCoefficients& o);
  PauliCoefficients& operator*=(double s);
};

PauliCoefficients operator+(PauliCoefficients a, const PauliCoefficients& b);
PauliCoefficients operator-(PauliCoefficients a, const PauliCoefficients& b);
PauliCoefficients operator*(double s, PauliCoefficients a);

/// CSV/column labels in flatten() order: r01, r02, ..., r33.
const std::array<const char*, 15>& coefficient_labels();

double tau_of(const PauliCoefficients& c);

struct StateDiagnostics {
  double hermiticity_error = 0.0;
  double trace_error = 0.0;  ///< |Tr rho - 1|
  double min_eigenvalue = 0.0;

  bool hermitian() const { return hermiticity_error < 1e-12; }
  bool unit_trace() const { return trace_error < 1e-12; }
  bool positive() const { return min_eigenvalue >= -1e-10; }
  bool is_state() const { return hermitian() && unit_trace() && positive(); }
};

StateDiagnostics diagnose(const ComplexMatrix4& m);

/// A 4x4 matrix that passed the Hermitian / unit-trace / PSD checks.
class DensityMatrix {
 public:
  /// Throws ValidationError naming the violated invariant.
  static DensityMatrix from_matrix(const ComplexMatrix4& m);
  static DensityMatrix from_coefficients(const PauliCoefficients& c);

  const ComplexMatrix4& matrix() const { return mat_; }

 private:
  explicit DensityMatrix(const ComplexMatrix4& m) : mat_(m) {}
  ComplexMatrix4 mat_;
};

/// Assembles the expansion; `identity_weight` is 1 for states and 0 for
/// traceless increments such as generator outputs.
ComplexMatrix4 to_matrix(const PauliCoefficients& c, double identity_weight = 1.0);

struct CoefficientReadout {
  PauliCoefficients coefficients;
  /// Tr m - 1. Never corrected: a non-unit trace is reported, not renormalized.
  double trace_error = 0.0;
};

/// rij = Re Tr[m (s_i x s_j)] and likewise for the single-site blocks.
CoefficientReadout to_coefficients(const ComplexMatrix4& m);

/// Product state |phi><phi| (x) |psi><psi|.
ComplexMatrix4 product_state(const Eigen::Vector2cd& phi, const Eigen::Vector2cd& psi);

/// s/3 Q + (1 - s) P; a state for 0 <= s <= 3/4.
ComplexMatrix4 werner_state(double s);

/// Largest deviation between the explicit products Sigma_i Sigma_j,
/// S_ij Sigma_k, Sigma_k S_ij, S_ij S_kl and their closed linear combinations
/// over every index choice. `eps` is injectable so the check can be mutated.
double check_appendix_algebra(LeviCivitaFn eps = levi_civita);

}  // namespace commonbath

#endif  // COMMONBATH_PAULI_ALGEBRA_HPP
