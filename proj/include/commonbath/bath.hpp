#ifndef COMMONBATH_BATH_HPP
#define COMMONBATH_BATH_HPP

#include "commonbath/types.hpp"

namespace commonbath {

/// Equal-block Kossakowski data: the Hermitian 3x3 matrix
///   calA_ij = A_ij + i sum_k eps_ijk B_k
/// with A real symmetric and B a real (pseudo)vector.
struct KossakowskiBlock {
  RealMatrix3 A = RealMatrix3::Zero();
  RealVector3 B = RealVector3::Zero();
  /// Set when the input A was asymmetric within tolerance and got symmetrized.
  bool symmetrized = false;

  /// tr A, the rate that multiplies the diagonal decay terms.
  double trace() const { return A.trace(); }
  ComplexMatrix3 hermitian() const;
};

ComplexMatrix3 kossakowski_matrix(const RealMatrix3& A, const RealVector3& B);

/// Validates and returns a bath. Throws ValidationError when A is not
/// symmetric within 1e-12 or when calA has an eigenvalue below -1e-12.
KossakowskiBlock make_bath(const RealMatrix3& A, const RealVector3& B);

/// Full 6x6 matrix [[calA, calA], [calA, calA]] over (s_i x 1, 1 x s_i).
ComplexMatrix6 assemble_full_C(const KossakowskiBlock& block);
ComplexMatrix6 assemble_full_C(const ComplexMatrix3& calA);

/// Orthogonal frame diagonalizing A. Rows of `rotation` are the frame axes:
/// rotation * A * rotation^T = diag(lambda) and B_rot = rotation * B.
///
/// B counts as a principal axis (closed_form_applicable) when
/// |A b - (b.A b) b| <= 1e-10 max|lambda| for b = B/|B|. Axis 3 is then b
/// itself, so B_rot(2) >= 0, and axes 1, 2 diagonalize A on the plane normal
/// to b with lambda(0) >= lambda(1). Otherwise the axes are in descending
/// eigenvalue order. Isotropic baths are always applicable.
struct PrincipalFrame {
  RealMatrix3 rotation = RealMatrix3::Identity();
  RealVector3 lambda = RealVector3::Zero();
  /// Eigenvalues of A in descending order, independent of the B alignment.
  RealVector3 eigenvalues_desc = RealVector3::Zero();
  RealVector3 B_rot = RealVector3::Zero();
  bool closed_form_applicable = false;
  /// B != 0 and B^2 = lambda_1 lambda_2: calA is singular on the (1,2) plane.
  bool boundary = false;

  /// Signed coupling along axis 3 (meaningful when applicable).
  double coupling() const { return B_rot(2); }
};

PrincipalFrame principal_frame(const KossakowskiBlock& block);

}  // namespace commonbath

#endif  // COMMONBATH_BATH_HPP
