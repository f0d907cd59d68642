#ifndef COMMONBATH_ENTANGLEMENT_HPP
#define COMMONBATH_ENTANGLEMENT_HPP

#include "commonbath/bath.hpp"
#include "commonbath/types.hpp"

namespace commonbath {

/// Transpose of the second tensor factor.
ComplexMatrix4 partial_transpose(const ComplexMatrix4& rho);

/// Smallest eigenvalue of the partial transpose; negative iff the two-qubit
/// state is entangled.
double min_pt_eigenvalue(const ComplexMatrix4& rho);

/// Wootters concurrence. Uses the Hermitian form sqrt(rho) Y rho* Y sqrt(rho)
/// with Y = s_y (x) s_y; eigenvalues above -1e-10 are clamped to zero.
double concurrence(const ComplexMatrix4& rho);

struct ClosedConcurrence {
  double delta = 0.0;
  double concurrence = 0.0;
  /// The equilibrium is entangled iff tau < threshold.
  double threshold = 0.0;
};

/// Asymptotic concurrence of the equilibrium family as a function of tau:
///   Delta = sqrt((1 - 2R)^2 + 4 (2R - M^2))
///   C = max{ (2 + Delta) / (2 (3 + 2R)) [ (4R - 3 Delta) / (2 + Delta) - tau ], 0 }.
/// This is the singlet-sector branch only; with N != 0 the other X-state
/// branch can also be active close to tau = 1 (see the tests).
/// Throws ValidationError unless 0 <= 2R <= 1, M^2 <= 2R, -3 <= tau <= 1.
ClosedConcurrence concurrence_closed(double M, double R, double tau);

struct GenerationVerdict {
  bool generated = false;
  /// Smallest eigenvalue of d/dt of the partial transpose, restricted to the
  /// kernel of the initial partial transpose.
  double witness_eigenvalue_rate = 0.0;
  /// First-order test is degenerate (|rate| <= 1e-12).
  bool inconclusive = false;
};

/// First-order entanglement-generation test from the pure product state
/// |phi> (x) |psi>. Throws ValidationError if phi or psi is not normalized
/// within 1e-10.
GenerationVerdict generation_test(const Eigen::Vector2cd& phi, const Eigen::Vector2cd& psi,
                                  const KossakowskiBlock& block);

}  // namespace commonbath

#endif  // COMMONBATH_ENTANGLEMENT_HPP
