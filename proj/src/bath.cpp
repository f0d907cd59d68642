#include "commonbath/bath.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "commonbath/linalg.hpp"
#include "commonbath/pauli_algebra.hpp"

namespace commonbath {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kPsdTol = 1e-12;
constexpr double kAlignTol = 1e-10;

// First component with magnitude above 1e-12 made positive.
void canonical_sign(Eigen::Ref<RealVector3> v) {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(v(i)) > 1e-12) {
      if (v(i) < 0) v = -v;
      return;
    }
  }
}

struct Axis {
  RealVector3 dir;
  double value;
};

}  // namespace

ComplexMatrix3 kossakowski_matrix(const RealMatrix3& A, const RealVector3& B) {
  ComplexMatrix3 m = A.cast<Complex>();
  for (int i = 0; i < kAxes; ++i)
    for (int j = 0; j < kAxes; ++j)
      for (int k = 0; k < kAxes; ++k) m(i, j) += Complex(0.0, levi_civita(i, j, k) * B(k));
  return m;
}

ComplexMatrix3 KossakowskiBlock::hermitian() const { return kossakowski_matrix(A, B); }

KossakowskiBlock make_bath(const RealMatrix3& A, const RealVector3& B) {
  if (!A.allFinite() || !B.allFinite()) throw ValidationError("bath: non-finite entry in A or B");

  const double asym = max_abs(A - A.transpose());
  if (asym > kSymmetryTol) {
    std::ostringstream msg;
    msg << "bath: A is not symmetric (max |A - A^T| = " << asym << ")";
    throw ValidationError(msg.str());
  }

  KossakowskiBlock block;
  block.A = 0.5 * (A + A.transpose());
  block.B = B;
  block.symmetrized = asym > 0.0;

  const double lowest = min_eigenvalue(block.hermitian());
  if (lowest < -kPsdTol) {
    std::ostringstream msg;
    msg << "bath: Kossakowski matrix is not positive semidefinite (eigenvalue " << lowest << ")";
    throw ValidationError(msg.str());
  }
  return block;
}

ComplexMatrix6 assemble_full_C(const ComplexMatrix3& calA) {
  ComplexMatrix6 c;
  c << calA, calA, calA, calA;
  return c;
}

ComplexMatrix6 assemble_full_C(const KossakowskiBlock& block) {
  return assemble_full_C(block.hermitian());
}

PrincipalFrame principal_frame(const KossakowskiBlock& block) {
  Eigen::SelfAdjointEigenSolver<RealMatrix3> solver(block.A);
  // Descending order.
  std::array<Axis, 3> axes;
  for (int k = 0; k < 3; ++k) axes[k] = {solver.eigenvectors().col(2 - k), solver.eigenvalues()(2 - k)};

  PrincipalFrame frame;
  for (int k = 0; k < 3; ++k) frame.eigenvalues_desc(k) = axes[k].value;

  const double scale = std::max(std::abs(axes[0].value), std::abs(axes[2].value));

  const RealVector3& B = block.B;
  const double bnorm = B.norm();
  std::array<Axis, 3> ordered = axes;

  if (bnorm == 0.0) {
    frame.closed_form_applicable = true;
  } else {
    // B is a principal axis when A b maps back onto b. The residual is
    // sin(angle) times the spectral gap, so nearly degenerate spectra do not
    // turn round-off in the eigenvectors into a spurious misalignment.
    const RealVector3 unit = B / bnorm;
    const RealVector3 image = block.A * unit;
    const double residual = (image - unit * unit.dot(image)).norm();
    frame.closed_form_applicable = residual <= kAlignTol * scale;

    if (frame.closed_form_applicable) {
      // Axis 3 is B itself; the other two diagonalize A on the plane normal
      // to it. Taking B rather than the computed eigenvector keeps nearly
      // degenerate spectra from tilting the frame away from B.
      const RealVector3 along = B / bnorm;
      const double along_value = along.dot(block.A * along);

      Eigen::Matrix<double, 3, 2> plane;
      int filled = 0;
      for (int k = 0; k < 3 && filled < 2; ++k) {
        RealVector3 v = axes[k].dir - along * along.dot(axes[k].dir);
        for (int m = 0; m < filled; ++m) v -= plane.col(m) * plane.col(m).dot(v);
        if (v.norm() < 1e-6) continue;
        plane.col(filled++) = v.normalized();
      }
      const Eigen::Matrix2d reduced = plane.transpose() * block.A * plane;
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> in_plane(0.5 * (reduced + reduced.transpose()));
      std::vector<Axis> rest;
      for (int k = 1; k >= 0; --k) rest.push_back({plane * in_plane.eigenvectors().col(k), in_plane.eigenvalues()(k)});
      ordered = {rest[0], rest[1], Axis{along, along_value}};
    }
  }

  for (int k = 0; k < 3; ++k) {
    // Axis 3 keeps the direction of B when the frame is aligned.
    if (!(frame.closed_form_applicable && bnorm > 0.0 && k == 2)) canonical_sign(ordered[k].dir);
    frame.rotation.row(k) = ordered[k].dir.transpose();
    frame.lambda(k) = ordered[k].value;
  }
  if (frame.rotation.determinant() < 0) frame.rotation.row(0) *= -1.0;

  frame.B_rot = frame.rotation * B;
  if (frame.closed_form_applicable) {
    // Remove round-off leakage off axis 3.
    frame.B_rot = RealVector3(0.0, 0.0, frame.B_rot(2));
    const double product = frame.lambda(0) * frame.lambda(1);
    const double b2 = frame.B_rot(2) * frame.B_rot(2);
    frame.boundary = b2 > 0.0 && product - b2 <= 1e-12 * std::max(product, b2);
  }
  return frame;
}

}  // namespace commonbath
