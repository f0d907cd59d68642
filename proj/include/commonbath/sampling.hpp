#ifndef COMMONBATH_SAMPLING_HPP
#define COMMONBATH_SAMPLING_HPP

#include <cstdint>
#include <random>

#include "commonbath/bath.hpp"
#include "commonbath/pauli_algebra.hpp"

namespace commonbath {

/// Seeded generator of random states, rotations and baths for the property
/// suites. Same seed, same sequence.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi);
  double normal();

  Eigen::Vector2cd qubit();
  /// G G^+ / Tr with complex Gaussian G: full rank almost surely.
  ComplexMatrix4 mixed_state();
  ComplexMatrix4 pure_product();
  /// Swap-symmetric state (rho0i = rhoi0, rhoij = rhoji).
  ComplexMatrix4 symmetric_state();
  /// Arbitrary real coefficients in [-1, 1], not necessarily a state.
  PauliCoefficients coefficients();
  /// Haar-distributed proper rotation.
  RealMatrix3 rotation();

  /// calA = G G^+ with complex Gaussian G: B generically misaligned with A.
  KossakowskiBlock generic_bath();
  /// Eigenvalues in [lambda_lo, lambda_hi], B along one principal axis with
  /// B^2 = fill * l1 l2 (fill drawn from [0, max_fill]), rotated at random.
  KossakowskiBlock aligned_bath(double lambda_lo = 0.3, double lambda_hi = 2.0, double max_fill = 0.95);

 private:
  std::mt19937_64 rng_;
};

}  // namespace commonbath

#endif  // COMMONBATH_SAMPLING_HPP
