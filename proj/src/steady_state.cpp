#include "commonbath/steady_state.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "commonbath/generator.hpp"
#include "commonbath/linalg.hpp"

namespace commonbath {

namespace {

constexpr double kRankThreshold = 1e-10;
constexpr double kFullRankFloor = 1e-8;

// Coefficients given in the principal frame, expressed in the input frame.
PauliCoefficients from_frame(const PauliCoefficients& f, const RealMatrix3& rotation) {
  PauliCoefficients c;
  c.r0i = rotation.transpose() * f.r0i;
  c.ri0 = rotation.transpose() * f.ri0;
  c.rij = rotation.transpose() * f.rij * rotation;
  return c;
}

double min_eig_of(const CoefficientVector& x) {
  return min_eigenvalue(to_matrix(PauliCoefficients::unflatten(x)));
}

// Maximizes the (concave) minimum eigenvalue along x + c d, c in [lo, hi].
double golden_section(const CoefficientVector& x, const CoefficientVector& d, double lo, double hi) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c1 = b - g * (b - a), c2 = a + g * (b - a);
  double f1 = min_eig_of(x + c1 * d), f2 = min_eig_of(x + c2 * d);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + g * (b - a);
      f2 = min_eig_of(x + c2 * d);
    } else {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - g * (b - a);
      f1 = min_eig_of(x + c1 * d);
    }
  }
  return 0.5 * (a + b);
}

double tau_component(const CoefficientVector& v) { return v(6) + v(10) + v(14); }

}  // namespace

StationaryFamily stationary_family(const KossakowskiBlock& block) {
  StationaryFamily fam;
  fam.frame = principal_frame(block);
  if (!fam.frame.closed_form_applicable)
    throw NotApplicableError(
        "closed form not applicable: B is not along a principal axis of A; use the numerical "
        "null-space solver");

  const double l1 = fam.frame.lambda(0), l2 = fam.frame.lambda(1), l3 = fam.frame.lambda(2);
  const double b = fam.frame.coupling();
  if (b != 0.0) {
    // B != 0 with B^2 <= l1 l2 forces l1, l2 > 0, so no denominator vanishes.
    const double e2 = l1 * l2 + l1 * l3 + l2 * l3;
    const double denom = 2.0 * (l1 + l2) * e2;
    fam.M = 2.0 * b / (l1 + l2);
    fam.N = (l1 - l2) * b * b / denom;
    fam.R = (l1 + l2 + 4.0 * l3) * b * b / denom;
  }
  fam.boundary = fam.frame.boundary;

  PauliCoefficients& f = fam.frame_coefficients;
  f.r0i(2) = fam.M;
  f.ri0(2) = fam.M;
  f.rij(0, 0) = -2.0 * fam.N;
  f.rij(1, 1) = 2.0 * fam.N;
  f.rij(2, 2) = 2.0 * fam.R;
  fam.coefficients = from_frame(f, fam.frame.rotation);
  fam.rho0_hat = to_matrix(fam.coefficients);
  return fam;
}

EquilibriumState equilibrium_components(double tau, const StationaryFamily& family) {
  if (!(tau >= -3.0 - 1e-12 && tau <= 1.0 + 1e-12))
    throw ValidationError("equilibrium_components: tau outside [-3, 1]");
  const double M = family.M, N = family.N, R = family.R;
  const double den = 3.0 + 2.0 * R;

  EquilibriumState eq;
  eq.tau = tau;
  eq.rho3 = (3.0 + tau) / den * M;
  eq.rho11 = ((1.0 - 2.0 * N) * tau - 2.0 * (3.0 * N + R)) / (2.0 * den);
  eq.rho22 = ((1.0 + 2.0 * N) * tau + 2.0 * (3.0 * N - R)) / (2.0 * den);
  eq.rho33 = (4.0 * R + (1.0 + 2.0 * R) * tau) / (2.0 * den);

  PauliCoefficients f;
  f.r0i(2) = eq.rho3;
  f.ri0(2) = eq.rho3;
  f.rij(0, 0) = 2.0 * eq.rho11;
  f.rij(1, 1) = 2.0 * eq.rho22;
  f.rij(2, 2) = 2.0 * eq.rho33;
  eq.coefficients = from_frame(f, family.frame.rotation);
  eq.state = to_matrix(eq.coefficients);
  return eq;
}

EquilibriumState asymptotic_state(const PauliCoefficients& initial, const StationaryFamily& family) {
  const OperatorBasis& b = basis();
  const ComplexMatrix4& P = b.singlet;
  const ComplexMatrix4& Q = b.triplet;
  const ComplexMatrix4 rho = to_matrix(initial);

  const double weight_p = (P * rho).trace().real();
  const double weight_q = (Q * rho).trace().real();

  const ComplexMatrix4 p_sector = P * family.rho0_hat * P;
  const ComplexMatrix4 q_sector = Q * family.rho0_hat * Q;
  const double norm_p = p_sector.trace().real();
  const double norm_q = q_sector.trace().real();
  // P has rank one, so P X P / Tr[P X P] = P whenever the trace is nonzero;
  // that limit also covers rho0_hat with no singlet weight.
  const ComplexMatrix4 p_part = norm_p > 1e-14 ? ComplexMatrix4(p_sector / norm_p) : P;
  const ComplexMatrix4 mapped = weight_p * p_part + weight_q * (q_sector / norm_q);

  const double tau = std::clamp(initial.tau(), -3.0, 1.0);
  EquilibriumState eq = equilibrium_components(tau, family);
  eq.cross_check_residual = max_abs(mapped - eq.state);
  eq.state = mapped;
  eq.coefficients = to_coefficients(mapped).coefficients;
  return eq;
}

std::optional<PauliCoefficients> NullSpace::point_at_tau(double tau) const {
  if (dimension != 1) return std::nullopt;
  const CoefficientVector& v = basis.front();
  const double dv = tau_component(v);
  if (std::abs(dv) < 1e-12) return std::nullopt;
  const double c = (tau - tau_component(particular)) / dv;
  return PauliCoefficients::unflatten(particular + c * v);
}

NullSpace liouvillian_null_space(const KossakowskiBlock& block) {
  const AffineGenerator g = affine_generator(block);
  Eigen::JacobiSVD<CoefficientMatrix> svd(g.linear, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();

  NullSpace ns;
  const double top = sv(0);
  int rank = 0;
  if (top > 0.0)
    for (int k = 0; k < 15; ++k)
      if (sv(k) > kRankThreshold * top) ++rank;
  ns.dimension = 15 - rank;
  for (int k = rank; k < 15; ++k) ns.basis.push_back(svd.matrixV().col(k));

  // Minimum-norm solution of G x = -h.
  CoefficientVector uh = svd.matrixU().transpose() * (-g.offset);
  for (int k = 0; k < 15; ++k) uh(k) = k < rank ? uh(k) / sv(k) : 0.0;
  ns.particular = svd.matrixV() * uh;
  ns.residual = (g.linear * ns.particular + g.offset).norm();

  // Start from the tau = 0 member and move along the solution set.
  CoefficientVector x = ns.particular;
  if (ns.dimension == 1) {
    if (auto zero = ns.point_at_tau(0.0)) x = zero->flatten();
  }
  // Coefficient vectors of states have norm at most sqrt(3).
  const double reach = 2.0 * std::sqrt(3.0);
  const int sweeps = ns.dimension == 1 ? 1 : 3;
  for (int s = 0; s < sweeps; ++s) {
    for (const CoefficientVector& d : ns.basis) {
      const double c = golden_section(x, d, -reach, reach);
      if (min_eig_of(x + c * d) > min_eig_of(x)) x += c * d;
    }
  }
  ns.full_rank_member = to_matrix(PauliCoefficients::unflatten(x));
  ns.member_min_eigenvalue = min_eigenvalue(ns.full_rank_member);
  ns.full_rank_found = ns.member_min_eigenvalue > kFullRankFloor;
  return ns;
}

double commutator_with_jumps(const KossakowskiBlock& block, const ComplexMatrix4& op) {
  double worst = 0.0;
  for (const ComplexMatrix4& v : jump_operators(block)) {
    worst = std::max(worst, max_abs(commutator(op, v)));
    worst = std::max(worst, max_abs(commutator(op, v.adjoint())));
  }
  return worst;
}

CommutantReport commutant_check(const KossakowskiBlock& block) {
  const ComplexMatrix4& S = basis().sym_total;
  const auto V = jump_operators(block);
  CommutantReport report;
  for (const ComplexMatrix4& v : V) report.residuals.push_back(max_abs(commutator(S, v)));
  for (const ComplexMatrix4& v : V) report.residuals.push_back(max_abs(commutator(S, v.adjoint())));
  report.contains_S =
      *std::max_element(report.residuals.begin(), report.residuals.end()) < 1e-12;
  return report;
}

}  // namespace commonbath
