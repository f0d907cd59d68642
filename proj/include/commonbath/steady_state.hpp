#ifndef COMMONBATH_STEADY_STATE_HPP
#define COMMONBATH_STEADY_STATE_HPP

#include <optional>
#include <vector>

#include "commonbath/bath.hpp"
#include "commonbath/pauli_algebra.hpp"

namespace commonbath {

/// Maximal-rank reference state of an aligned bath and its parameters
///   M = 2B / (l1 + l2)
///   N = (l1 - l2) B^2 / (2 (l1 + l2) e2)
///   R = (l1 + l2 + 4 l3) B^2 / (2 (l1 + l2) e2),   e2 = l1 l2 + l1 l3 + l2 l3
/// with rho0_hat = 1/4 [1 + M Sigma_3 - N (S_11 - S_22) + R S_33] in the
/// principal frame. All three vanish when B = 0.
struct StationaryFamily {
  double M = 0.0;
  double N = 0.0;
  double R = 0.0;
  PrincipalFrame frame;
  /// Expansion coefficients of rho0_hat in the frame and in the input frame.
  PauliCoefficients frame_coefficients;
  PauliCoefficients coefficients;
  ComplexMatrix4 rho0_hat = ComplexMatrix4::Identity() / 4.0;
  /// B^2 = l1 l2: rho0_hat loses rank and the full-rank construction is
  /// unavailable.
  bool boundary = false;
};

/// Throws NotApplicableError when B is not along a principal axis of A.
StationaryFamily stationary_family(const KossakowskiBlock& block);

/// Symmetric equilibrium state at a given tau. The components rho3, rho11,
/// rho22, rho33 are the principal-frame amplitudes of Sigma_3 and S_ii, i.e.
/// half of the corresponding expansion coefficients.
struct EquilibriumState {
  double tau = 0.0;
  double rho3 = 0.0;
  double rho11 = 0.0;
  double rho22 = 0.0;
  double rho33 = 0.0;
  PauliCoefficients coefficients;  ///< input frame
  ComplexMatrix4 state = ComplexMatrix4::Identity() / 4.0;
  /// For asymptotic_state: max entrywise gap between the projector
  /// construction and the tau-parametrized components. Zero otherwise.
  double cross_check_residual = 0.0;
};

/// Throws ValidationError for tau outside [-3, 1].
EquilibriumState equilibrium_components(double tau, const StationaryFamily& family);

/// rho(0) -> P rho0 P / Tr[P rho0 P] Tr[P rho(0)] + Q rho0 Q / Tr[Q rho0 Q] Tr[Q rho(0)].
EquilibriumState asymptotic_state(const PauliCoefficients& initial, const StationaryFamily& family);

/// Affine set {x : G x + h = 0} of stationary coefficient vectors.
struct NullSpace {
  int dimension = 0;
  CoefficientVector particular = CoefficientVector::Zero();
  std::vector<CoefficientVector> basis;
  /// |G particular + h|; large values mean the affine system is inconsistent.
  double residual = 0.0;
  bool full_rank_found = false;
  ComplexMatrix4 full_rank_member = ComplexMatrix4::Identity() / 4.0;
  double member_min_eigenvalue = 0.0;

  /// The stationary solution with the requested tau, when some basis
  /// direction moves tau and the solution set is a line.
  std::optional<PauliCoefficients> point_at_tau(double tau) const;
};

/// SVD of the 15x15 coefficient generator with rank threshold 1e-10 relative
/// to the largest singular value, then a line search for a member with all
/// eigenvalues above 1e-8.
NullSpace liouvillian_null_space(const KossakowskiBlock& block);

struct CommutantReport {
  bool contains_S = false;
  /// |[S, V_i]| for i = 1..3 followed by |[S, V_i^+]|.
  std::vector<double> residuals;
};

CommutantReport commutant_check(const KossakowskiBlock& block);

/// Largest commutator norm between `op` and the jump operators and their adjoints.
double commutator_with_jumps(const KossakowskiBlock& block, const ComplexMatrix4& op);

}  // namespace commonbath

#endif  // COMMONBATH_STEADY_STATE_HPP
