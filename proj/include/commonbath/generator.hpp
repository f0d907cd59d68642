#ifndef COMMONBATH_GENERATOR_HPP
#define COMMONBATH_GENERATOR_HPP

#include <array>
#include <functional>
#include <vector>

#include "commonbath/bath.hpp"
#include "commonbath/pauli_algebra.hpp"

namespace commonbath {

/// sum_ij calA_ij [Sigma_j rho Sigma_i - 1/2 {Sigma_i Sigma_j, rho}].
/// Linear in `rho`, so it also accepts non-state operators.
ComplexMatrix4 rhs_equal_blocks(const ComplexMatrix4& rho, const KossakowskiBlock& block);

/// Time derivative of the 15 expansion coefficients. This is the production
/// right-hand side; A need not be diagonal nor B aligned.
PauliCoefficients rhs_components(const PauliCoefficients& state, const KossakowskiBlock& block);

/// Dissipator with an arbitrary 6x6 Kossakowski matrix over
/// F = (s_1 x 1, s_2 x 1, s_3 x 1, 1 x s_1, 1 x s_2, 1 x s_3).
class GeneralDissipator {
 public:
  /// Throws ValidationError if C is not Hermitian or has an eigenvalue
  /// below -1e-10.
  explicit GeneralDissipator(const ComplexMatrix6& C);

  ComplexMatrix4 operator()(const ComplexMatrix4& rho) const;
  const ComplexMatrix6& matrix() const { return C_; }

 private:
  ComplexMatrix6 C_;
  std::array<ComplexMatrix4, 6> F_;
};

ComplexMatrix4 rhs_general(const ComplexMatrix4& rho, const ComplexMatrix6& C);

/// V_i = sum_j (calA^{1/2})_ij Sigma_j.
std::array<ComplexMatrix4, 3> jump_operators(const KossakowskiBlock& block);

/// sum_k [V_k rho V_k^+ - 1/2 {V_k^+ V_k, rho}].
ComplexMatrix4 rhs_diagonal_form(const ComplexMatrix4& rho, const KossakowskiBlock& block);

/// Max entrywise deviation between the diagonal form and rhs_equal_blocks.
double diagonal_form_check(const KossakowskiBlock& block, const ComplexMatrix4& rho);

/// Coefficient dynamics written as d/dt x = linear * x + offset.
struct AffineGenerator {
  CoefficientMatrix linear = CoefficientMatrix::Zero();
  CoefficientVector offset = CoefficientVector::Zero();
};

AffineGenerator affine_generator(const KossakowskiBlock& block);

struct IntegratorSettings {
  double t_end = 50.0;
  double dt = 0.01;
  int sample_every = 1;
};

/// 0.01 / max(largest eigenvalue of A, |B|, 1).
double default_dt(const KossakowskiBlock& block);

struct Sample {
  double t = 0.0;
  PauliCoefficients state;
  double tau = 0.0;
  /// |Tr rho - 1| of the reconstructed matrix. The coefficient form carries
  /// the identity part implicitly, so this stays at round-off level.
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
  double min_pt_eigenvalue = 0.0;
  double concurrence = 0.0;
};

struct Trajectory {
  std::vector<Sample> samples;

  const Sample& back() const { return samples.back(); }
  double max_tau_drift() const;
};

Sample observe(double t, const PauliCoefficients& state);

/// Classical RK4 with fixed step on the coefficient vector. Samples at step 0,
/// every `sample_every` steps and at t_end (the last step is shortened if
/// t_end is not a multiple of dt). Throws IntegrationError when a sample has
/// an eigenvalue below -1e-7 and ValidationError on bad settings or initial
/// state.
Trajectory evolve(const PauliCoefficients& initial, const KossakowskiBlock& block,
                  const IntegratorSettings& settings);

/// RK4 of an arbitrary linear matrix flow; used for the general dissipator.
/// `on_step` (optional) sees every intermediate state.
ComplexMatrix4 propagate_matrix(const ComplexMatrix4& rho0,
                                const std::function<ComplexMatrix4(const ComplexMatrix4&)>& rhs,
                                double t_end, double dt,
                                const std::function<void(double, const ComplexMatrix4&)>& on_step = {});

}  // namespace commonbath

#endif  // COMMONBATH_GENERATOR_HPP
