#include "commonbath/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "commonbath/generator.hpp"
#include "commonbath/linalg.hpp"
#include "commonbath/pauli_algebra.hpp"

namespace commonbath {

namespace {
constexpr double kParamTol = 1e-12;
constexpr double kRateTol = 1e-12;
}  // namespace

ComplexMatrix4 partial_transpose(const ComplexMatrix4& rho) {
  ComplexMatrix4 out;
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap)
      out.block<2, 2>(2 * a, 2 * ap) = rho.block<2, 2>(2 * a, 2 * ap).transpose();
  return out;
}

double min_pt_eigenvalue(const ComplexMatrix4& rho) { return min_eigenvalue(partial_transpose(rho)); }

double concurrence(const ComplexMatrix4& rho) {
  const ComplexMatrix4 yy = kron(basis().sigma[1], basis().sigma[1]);
  const ComplexMatrix4 root = psd_sqrt(rho);
  const ComplexMatrix4 flipped = yy * rho.conjugate() * yy;
  RealVector4 ev = hermitian_eigenvalues(ComplexMatrix4(root * flipped * root));
  // The product is PSD for any state; negatives are round-off.
  for (int k = 0; k < 4; ++k) ev(k) = std::sqrt(std::max(ev(k), 0.0));
  std::sort(ev.data(), ev.data() + 4, std::greater<>());
  return std::max(ev(0) - ev(1) - ev(2) - ev(3), 0.0);
}

ClosedConcurrence concurrence_closed(double M, double R, double tau) {
  if (!(2.0 * R >= -kParamTol && 2.0 * R <= 1.0 + kParamTol))
    throw ValidationError("concurrence_closed: requires 0 <= 2R <= 1");
  if (!(M * M <= 2.0 * R + kParamTol)) throw ValidationError("concurrence_closed: requires M^2 <= 2R");
  if (!(tau >= -3.0 - kParamTol && tau <= 1.0 + kParamTol))
    throw ValidationError("concurrence_closed: tau outside [-3, 1]");

  ClosedConcurrence out;
  const double one_minus = 1.0 - 2.0 * R;
  out.delta = std::sqrt(one_minus * one_minus + 4.0 * std::max(2.0 * R - M * M, 0.0));
  out.threshold = (4.0 * R - 3.0 * out.delta) / (2.0 + out.delta);
  // Same affine function of tau, written around tau = -3 so that the
  // maximally entangled end evaluates to exactly one.
  const double c = 1.0 - (2.0 + out.delta) * (tau + 3.0) / (2.0 * (3.0 + 2.0 * R));
  out.concurrence = std::max(c, 0.0);
  return out;
}

GenerationVerdict generation_test(const Eigen::Vector2cd& phi, const Eigen::Vector2cd& psi,
                                  const KossakowskiBlock& block) {
  if (std::abs(phi.norm() - 1.0) > 1e-10 || std::abs(psi.norm() - 1.0) > 1e-10)
    throw ValidationError("generation_test: phi and psi must be normalized");

  const ComplexMatrix4 rho0 = product_state(phi, psi);
  const ComplexMatrix4 rate = partial_transpose(rhs_equal_blocks(rho0, block));

  // The partial transpose of |phi psi><phi psi| is the projector on
  // |phi> (x) conj(psi); its kernel is the orthogonal complement.
  Eigen::Vector4cd support;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) support(2 * a + b) = phi(a) * std::conj(psi(b));
  const ComplexMatrix4 projector = ComplexMatrix4::Identity() - support * support.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix4> split(projector);
  // Eigenvalues ascending: 0, 1, 1, 1. The last three columns span the kernel.
  const Eigen::Matrix<Complex, 4, 3> kernel = split.eigenvectors().rightCols<3>();
  const ComplexMatrix3 restricted = kernel.adjoint() * rate * kernel;

  GenerationVerdict verdict;
  verdict.witness_eigenvalue_rate = min_eigenvalue(restricted);
  verdict.generated = verdict.witness_eigenvalue_rate < -kRateTol;
  verdict.inconclusive = std::abs(verdict.witness_eigenvalue_rate) <= kRateTol;
  return verdict;
}

}  // namespace commonbath
