#include "doctest.h"

#include <cmath>

#include "commonbath/bath.hpp"
#include "commonbath/linalg.hpp"
#include "commonbath/sampling.hpp"

using namespace commonbath;

namespace {

RealMatrix3 diag(double a, double b, double c) { return RealVector3(a, b, c).asDiagonal(); }

void check_frame_invariants(const PrincipalFrame& f, const KossakowskiBlock& blk) {
  CHECK((f.rotation * f.rotation.transpose() - RealMatrix3::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(f.rotation.determinant() == doctest::Approx(1.0));
  const RealMatrix3 d = f.rotation * blk.A * f.rotation.transpose();
  CHECK((d - RealMatrix3(f.lambda.asDiagonal())).cwiseAbs().maxCoeff() < 1e-12);
}

}  // namespace

TEST_CASE("make_bath validation") {
  SUBCASE("isotropic bath with B inside the cone") {
    const KossakowskiBlock blk = make_bath(diag(1, 1, 1), RealVector3(0, 0, 0.5));
    CHECK(blk.trace() == 3.0);
    CHECK_FALSE(blk.symmetrized);
    // Eigenvalues of calA are lambda_3 and lambda_1 +- B here.
    const RealVector3 ev = hermitian_eigenvalues(blk.hermitian());
    CHECK(ev(0) == doctest::Approx(0.5));
    CHECK(ev(1) == doctest::Approx(1.0));
    CHECK(ev(2) == doctest::Approx(1.5));
  }

  SUBCASE("B beyond the cone is rejected with the offending eigenvalue") {
    try {
      make_bath(diag(1, 1, 1), RealVector3(0, 0, 2));
      FAIL("expected rejection");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("-1") != std::string::npos);
    }
  }

  SUBCASE("zero bath is valid") {
    const KossakowskiBlock blk = make_bath(RealMatrix3::Zero(), RealVector3::Zero());
    CHECK(blk.hermitian().isZero());
  }

  SUBCASE("asymmetric A") {
    RealMatrix3 a = diag(1, 1, 1);
    a(0, 1) = 1e-13;
    const KossakowskiBlock blk = make_bath(a, RealVector3::Zero());
    CHECK(blk.symmetrized);
    CHECK(blk.A == blk.A.transpose());
    a(0, 1) = 1e-6;
    CHECK_THROWS_AS(make_bath(a, RealVector3::Zero()), ValidationError);
  }

  SUBCASE("negative eigenvalue of A") {
    CHECK_THROWS_AS(make_bath(diag(1, -0.1, 1), RealVector3::Zero()), ValidationError);
  }

  SUBCASE("imaginary part follows eps_ijk B_k") {
    const ComplexMatrix3 m = kossakowski_matrix(RealMatrix3::Zero(), RealVector3(0.1, 0.2, 0.3));
    CHECK(m(0, 1).imag() == doctest::Approx(0.3));
    CHECK(m(1, 2).imag() == doctest::Approx(0.1));
    CHECK(m(2, 0).imag() == doctest::Approx(0.2));
    CHECK(m(1, 0).imag() == doctest::Approx(-0.3));
  }
}

TEST_CASE("assemble_full_C") {
  SUBCASE("identity block gives spectrum {0,0,0,2,2,2}") {
    const ComplexMatrix6 c = assemble_full_C(make_bath(diag(1, 1, 1), RealVector3::Zero()));
    const auto ev = hermitian_eigenvalues(c);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(ev(k)) < 1e-12);
    for (int k = 3; k < 6; ++k) CHECK(ev(k) == doctest::Approx(2.0));
  }

  SUBCASE("zero block") { CHECK(assemble_full_C(make_bath(RealMatrix3::Zero(), RealVector3::Zero())).isZero()); }

  SUBCASE("spectrum is {2 eig(calA)} plus three zeros") {
    Sampler rng(21);
    for (int n = 0; n < 50; ++n) {
      const KossakowskiBlock blk = rng.generic_bath();
      const auto small = hermitian_eigenvalues(blk.hermitian());
      auto full = hermitian_eigenvalues(assemble_full_C(blk));
      CHECK(full.minCoeff() >= -1e-12);
      std::vector<double> expected = {0, 0, 0, 2 * small(0), 2 * small(1), 2 * small(2)};
      std::sort(expected.begin(), expected.end());
      for (int k = 0; k < 6; ++k) CHECK(full(k) == doctest::Approx(expected[k]).epsilon(1e-10));
    }
  }

  SUBCASE("PSD iff calA PSD, across the B^2 = l1 l2 boundary") {
    Sampler rng(22);
    int mismatches = 0, psd = 0;
    for (int n = 0; n < 1000; ++n) {
      const RealVector3 lam(rng.uniform(0.1, 2), rng.uniform(0.1, 2), rng.uniform(0.1, 2));
      const double b = std::sqrt(rng.uniform(0.5, 1.5) * lam(0) * lam(1));
      const RealMatrix3 o = rng.rotation();
      const ComplexMatrix3 calA =
          kossakowski_matrix(o.transpose() * lam.asDiagonal() * o, o.transpose() * RealVector3(0, 0, b));
      const bool small = min_eigenvalue(calA) >= -1e-12;
      const bool full = min_eigenvalue(assemble_full_C(calA)) >= -1e-12;
      psd += small;
      mismatches += small != full;
    }
    CHECK(mismatches == 0);
    // The sample really straddles the boundary.
    CHECK(psd > 300);
    CHECK(psd < 700);
  }
}

TEST_CASE("spectrum of calA is covariant under proper rotations") {
  Sampler rng(23);
  double worst = 0.0;
  for (int n = 0; n < 200; ++n) {
    const KossakowskiBlock blk = rng.generic_bath();
    const RealMatrix3 o = rng.rotation();
    const auto e1 = hermitian_eigenvalues(blk.hermitian());
    const auto e2 = hermitian_eigenvalues(kossakowski_matrix(o * blk.A * o.transpose(), o * blk.B));
    worst = std::max(worst, (e1 - e2).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("principal_frame") {
  SUBCASE("diagonal A, B along an axis: permutation only") {
    const KossakowskiBlock blk = make_bath(diag(2, 1, 3), RealVector3(0, 0, 0.4));
    const PrincipalFrame f = principal_frame(blk);
    check_frame_invariants(f, blk);
    CHECK(f.closed_form_applicable);
    CHECK(f.eigenvalues_desc.isApprox(RealVector3(3, 2, 1)));
    // B sits on the lambda = 3 axis, which becomes axis 3.
    CHECK(f.lambda.isApprox(RealVector3(2, 1, 3)));
    CHECK(f.B_rot.isApprox(RealVector3(0, 0, 0.4)));
    CHECK_FALSE(f.boundary);
  }

  SUBCASE("isotropic A: the degenerate eigenspace is rotated onto B") {
    const KossakowskiBlock blk = make_bath(diag(1, 1, 1), RealVector3(0.3, 0.4, 0));
    const PrincipalFrame f = principal_frame(blk);
    check_frame_invariants(f, blk);
    CHECK(f.closed_form_applicable);
    CHECK((f.B_rot - RealVector3(0, 0, 0.5)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((f.rotation * blk.B - RealVector3(0, 0, 0.5)).cwiseAbs().maxCoeff() < 1e-14);
  }

  SUBCASE("two-fold degeneracy containing B") {
    const KossakowskiBlock blk = make_bath(diag(2, 1, 1), RealVector3(0, 0.2, 0.2));
    const PrincipalFrame f = principal_frame(blk);
    check_frame_invariants(f, blk);
    CHECK(f.closed_form_applicable);
    CHECK(f.lambda.isApprox(RealVector3(2, 1, 1)));
    CHECK(f.coupling() == doctest::Approx(std::sqrt(0.08)));
  }

  SUBCASE("misaligned B with distinct eigenvalues is not applicable") {
    const KossakowskiBlock blk = make_bath(diag(3, 2, 1), RealVector3(0.2, 0.3, 0.1));
    const PrincipalFrame f = principal_frame(blk);
    check_frame_invariants(f, blk);
    CHECK_FALSE(f.closed_form_applicable);
    CHECK(f.lambda.isApprox(RealVector3(3, 2, 1)));
  }

  SUBCASE("negative B keeps a right-handed frame with positive coupling") {
    const KossakowskiBlock blk = make_bath(diag(2, 1, 3), RealVector3(0, 0, -0.4));
    const PrincipalFrame f = principal_frame(blk);
    check_frame_invariants(f, blk);
    CHECK(f.coupling() == doctest::Approx(0.4));
  }

  SUBCASE("boundary bath is flagged") {
    const PrincipalFrame f = principal_frame(make_bath(diag(1, 1, 1), RealVector3(0, 0, 1)));
    CHECK(f.closed_form_applicable);
    CHECK(f.boundary);
    CHECK_FALSE(principal_frame(make_bath(diag(1, 1, 1), RealVector3(0, 0, 0.999))).boundary);
  }

  SUBCASE("random aligned baths are recovered") {
    Sampler rng(24);
    for (int n = 0; n < 200; ++n) {
      const KossakowskiBlock blk = rng.aligned_bath(0.0, 2.0, 1.0);
      const PrincipalFrame f = principal_frame(blk);
      check_frame_invariants(f, blk);
      REQUIRE(f.closed_form_applicable);
      CHECK(f.lambda.minCoeff() >= -1e-12);
      CHECK(f.lambda(0) >= f.lambda(1));
      const double b = f.coupling();
      CHECK(b * b <= f.lambda(0) * f.lambda(1) + 1e-12);
      CHECK(std::abs(f.rotation.row(2).dot(blk.B) - b) < 1e-12);
    }
  }
}
