#include "commonbath/generator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "commonbath/entanglement.hpp"
#include "commonbath/linalg.hpp"

namespace commonbath {

ComplexMatrix4 rhs_equal_blocks(const ComplexMatrix4& rho, const KossakowskiBlock& block) {
  const auto& Sg = basis().collective;
  const ComplexMatrix3 calA = block.hermitian();
  ComplexMatrix4 out = ComplexMatrix4::Zero();
  for (int i = 0; i < kAxes; ++i) {
    for (int j = 0; j < kAxes; ++j) {
      if (calA(i, j) == Complex(0.0)) continue;
      const ComplexMatrix4 prod = Sg[i] * Sg[j];
      out += calA(i, j) * (Sg[j] * rho * Sg[i] - 0.5 * anticommutator(prod, rho));
    }
  }
  return out;
}

PauliCoefficients rhs_components(const PauliCoefficients& state, const KossakowskiBlock& block) {
  const RealMatrix3& A = block.A;
  const RealVector3& B = block.B;
  const RealVector3& x = state.r0i;
  const RealVector3& y = state.ri0;
  const RealMatrix3& r = state.rij;
  const double a = A.trace();
  const double tau = r.trace();

  PauliCoefficients d;
  d.r0i = -2.0 * a * x + 2.0 * (A * x - r * B) + 2.0 * (2.0 + tau) * B;
  d.ri0 = -2.0 * a * y + 2.0 * (A * y - r.transpose() * B) + 2.0 * (2.0 + tau) * B;

  const RealMatrix3 Ar = A * r;             // (A r)_ij = sum_k A_ik r_kj
  const RealMatrix3 ArT = A * r.transpose();  // sum_k A_ik r_jk
  const double contraction = (A.cwiseProduct(r.transpose())).sum();  // sum_kl A_kl r_lk
  const double bsum = B.dot(x + y);

  for (int i = 0; i < kAxes; ++i) {
    for (int j = 0; j < kAxes; ++j) {
      double v = -4.0 * a * (r(i, j) + r(j, i));
      v += 2.0 * (Ar(i, j) + ArT(j, i));       // A_ik r_kj + A_jk r_ik
      v -= 4.0 * A(i, j) * tau;
      v += 4.0 * (ArT(i, j) + Ar(j, i));       // A_ik r_jk + A_jk r_ki
      v += 2.0 * (B(i) * y(j) + B(j) * x(i));
      v += 4.0 * (B(i) * x(j) + B(j) * y(i));
      if (i == j) v += 4.0 * (a * tau - contraction) - 2.0 * bsum;
      d.rij(i, j) = v;
    }
  }
  return d;
}

GeneralDissipator::GeneralDissipator(const ComplexMatrix6& C) : C_(C) {
  if (!C.allFinite()) throw ValidationError("general dissipator: non-finite entry");
  if (hermiticity_error(C) > 1e-12) throw ValidationError("general dissipator: C is not Hermitian");
  const double lowest = min_eigenvalue(C);
  if (lowest < -1e-10) {
    std::ostringstream msg;
    msg << "general dissipator: C is not positive semidefinite (eigenvalue " << lowest << ")";
    throw ValidationError(msg.str());
  }
  const OperatorBasis& b = basis();
  for (int k = 0; k < kAxes; ++k) {
    F_[k] = b.first[k];
    F_[k + 3] = b.second[k];
  }
}

ComplexMatrix4 GeneralDissipator::operator()(const ComplexMatrix4& rho) const {
  ComplexMatrix4 out = ComplexMatrix4::Zero();
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      if (C_(a, b) == Complex(0.0)) continue;
      out += C_(a, b) * (F_[b] * rho * F_[a] - 0.5 * anticommutator(F_[a] * F_[b], rho));
    }
  }
  return out;
}

ComplexMatrix4 rhs_general(const ComplexMatrix4& rho, const ComplexMatrix6& C) {
  return GeneralDissipator(C)(rho);
}

std::array<ComplexMatrix4, 3> jump_operators(const KossakowskiBlock& block) {
  const ComplexMatrix3 root = psd_sqrt(block.hermitian());
  const auto& Sg = basis().collective;
  std::array<ComplexMatrix4, 3> V;
  for (int i = 0; i < kAxes; ++i) {
    V[i].setZero();
    for (int j = 0; j < kAxes; ++j) V[i] += root(i, j) * Sg[j];
  }
  return V;
}

ComplexMatrix4 rhs_diagonal_form(const ComplexMatrix4& rho, const KossakowskiBlock& block) {
  const auto V = jump_operators(block);
  ComplexMatrix4 out = ComplexMatrix4::Zero();
  for (const ComplexMatrix4& v : V)
    out += v * rho * v.adjoint() - 0.5 * anticommutator(v.adjoint() * v, rho);
  return out;
}

double diagonal_form_check(const KossakowskiBlock& block, const ComplexMatrix4& rho) {
  return max_abs(rhs_diagonal_form(rho, block) - rhs_equal_blocks(rho, block));
}

AffineGenerator affine_generator(const KossakowskiBlock& block) {
  AffineGenerator g;
  g.offset = rhs_components(PauliCoefficients{}, block).flatten();
  for (int k = 0; k < 15; ++k) {
    CoefficientVector e = CoefficientVector::Zero();
    e(k) = 1.0;
    g.linear.col(k) = rhs_components(PauliCoefficients::unflatten(e), block).flatten() - g.offset;
  }
  return g;
}

double default_dt(const KossakowskiBlock& block) {
  const double top = hermitian_eigenvalues(block.A).maxCoeff();
  return 0.01 / std::max({top, block.B.norm(), 1.0});
}

double Trajectory::max_tau_drift() const {
  double worst = 0.0;
  for (const Sample& s : samples) worst = std::max(worst, std::abs(s.tau - samples.front().tau));
  return worst;
}

Sample observe(double t, const PauliCoefficients& state) {
  Sample s;
  s.t = t;
  s.state = state;
  s.tau = state.tau();
  const ComplexMatrix4 m = to_matrix(state);
  s.trace_error = std::abs(m.trace() - 1.0);
  s.min_eigenvalue = min_eigenvalue(m);
  s.min_pt_eigenvalue = min_eigenvalue(partial_transpose(m));
  s.concurrence = concurrence(m);
  return s;
}

Trajectory evolve(const PauliCoefficients& initial, const KossakowskiBlock& block,
                  const IntegratorSettings& settings) {
  if (!(settings.t_end > 0.0)) throw ValidationError("evolve: t_end must be positive");
  if (!(settings.dt > 0.0)) throw ValidationError("evolve: dt must be positive");
  if (settings.dt > settings.t_end) throw ValidationError("evolve: dt exceeds t_end");
  if (settings.sample_every < 1) throw ValidationError("evolve: sample_every must be >= 1");
  DensityMatrix::from_coefficients(initial);

  const long steps = static_cast<long>(std::ceil(settings.t_end / settings.dt - 1e-9));
  auto f = [&](const PauliCoefficients& c) { return rhs_components(c, block); };

  Trajectory traj;
  auto record = [&](double t, const PauliCoefficients& c) {
    Sample s = observe(t, c);
    if (s.min_eigenvalue < -1e-7) {
      std::ostringstream msg;
      msg << "evolve: state left the positive cone at t = " << t << " (eigenvalue "
          << s.min_eigenvalue << "); reduce dt";
      throw IntegrationError(msg.str());
    }
    traj.samples.push_back(std::move(s));
  };

  PauliCoefficients x = initial;
  record(0.0, x);
  for (long n = 1; n <= steps; ++n) {
    const double t_prev = (n - 1) * settings.dt;
    const double t = (n == steps) ? settings.t_end : n * settings.dt;
    const double h = t - t_prev;
    const PauliCoefficients k1 = f(x);
    const PauliCoefficients k2 = f(x + (0.5 * h) * k1);
    const PauliCoefficients k3 = f(x + (0.5 * h) * k2);
    const PauliCoefficients k4 = f(x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (n % settings.sample_every == 0 || n == steps) record(t, x);
  }
  return traj;
}

ComplexMatrix4 propagate_matrix(const ComplexMatrix4& rho0,
                                const std::function<ComplexMatrix4(const ComplexMatrix4&)>& rhs,
                                double t_end, double dt,
                                const std::function<void(double, const ComplexMatrix4&)>& on_step) {
  if (!(t_end > 0.0) || !(dt > 0.0)) throw ValidationError("propagate: t_end and dt must be positive");
  const long steps = static_cast<long>(std::ceil(t_end / dt - 1e-9));
  ComplexMatrix4 x = rho0;
  for (long n = 1; n <= steps; ++n) {
    const double t_prev = (n - 1) * dt;
    const double t = (n == steps) ? t_end : n * dt;
    const double h = t - t_prev;
    const ComplexMatrix4 k1 = rhs(x);
    const ComplexMatrix4 k2 = rhs(x + 0.5 * h * k1);
    const ComplexMatrix4 k3 = rhs(x + 0.5 * h * k2);
    const ComplexMatrix4 k4 = rhs(x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (on_step) on_step(t, x);
  }
  return x;
}

}  // namespace commonbath
