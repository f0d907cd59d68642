#include "commonbath/self_check.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "commonbath/bath.hpp"
#include "commonbath/entanglement.hpp"
#include "commonbath/generator.hpp"
#include "commonbath/linalg.hpp"
#include "commonbath/pauli_algebra.hpp"
#include "commonbath/sampling.hpp"
#include "commonbath/steady_state.hpp"

namespace commonbath {

namespace {

int flipped_levi_civita(int i, int j, int k) {
  if (i == 0 && j == 1 && k == 2) return -1;
  return levi_civita(i, j, k);
}

struct Suite {
  const char* name;
  double bound;
  std::function<double(Sampler&)> run;
};

// Suites that count violations report the count against bound 1.
constexpr double kCount = 1.0;

double antisymmetric_part(const PauliCoefficients& c) {
  return std::max((c.r0i - c.ri0).cwiseAbs().maxCoeff(), (c.rij - c.rij.transpose()).cwiseAbs().maxCoeff());
}

std::vector<Suite> suites(const CheckOptions& options) {
  const LeviCivitaFn eps = options.corrupt_levi_civita ? flipped_levi_civita : levi_civita;
  std::vector<Suite> all;

  all.push_back({"product_table", 1e-13, [eps](Sampler&) { return check_appendix_algebra(eps); }});

  all.push_back({"basis_identities", 1e-14, [](Sampler&) {
                   const OperatorBasis& b = basis();
                   double w = max_abs(b.singlet * b.singlet - b.singlet);
                   w = std::max(w, max_abs(b.triplet * b.triplet - b.triplet));
                   w = std::max(w, max_abs(b.singlet * b.triplet));
                   w = std::max(w, std::abs(b.singlet.trace() - 1.0));
                   for (const auto& s : b.collective) {
                     w = std::max(w, max_abs(commutator(b.sym_total, s)));
                     w = std::max(w, max_abs(commutator(b.singlet, s)));
                   }
                   return w;
                 }});

  all.push_back({"coefficient_round_trip", 1e-14, [](Sampler& rng) {
                   double w = 0.0;
                   for (int n = 0; n < 1000; ++n) {
                     const PauliCoefficients c = rng.coefficients();
                     const PauliCoefficients back = to_coefficients(to_matrix(c)).coefficients;
                     w = std::max(w, (back.flatten() - c.flatten()).cwiseAbs().maxCoeff());
                   }
                   return w;
                 }});

  all.push_back({"tau_identity", 1e-12, [](Sampler& rng) {
                   double w = 0.0;
                   for (int n = 0; n < 1000; ++n) {
                     const ComplexMatrix4 rho = rng.mixed_state();
                     const double tau = to_coefficients(rho).coefficients.tau();
                     const double via_p = 1.0 - 4.0 * (basis().singlet * rho).trace().real();
                     w = std::max(w, std::abs(tau - via_p));
                   }
                   return w;
                 }});

  all.push_back({"separable_tau_bound", kCount, [](Sampler& rng) {
                   int bad = 0;
                   for (int n = 0; n < 10000; ++n)
                     if (to_coefficients(rng.pure_product()).coefficients.tau() < -1.0 - 1e-12) ++bad;
                   return double(bad);
                 }});

  all.push_back({"bath_covariance", 1e-12, [](Sampler& rng) {
                   double w = 0.0;
                   for (int n = 0; n < 200; ++n) {
                     const KossakowskiBlock blk = rng.generic_bath();
                     const RealMatrix3 o = rng.rotation();
                     const auto e1 = hermitian_eigenvalues(blk.hermitian());
                     const auto e2 = hermitian_eigenvalues(kossakowski_matrix(o * blk.A * o.transpose(), o * blk.B));
                     w = std::max(w, (e1 - e2).cwiseAbs().maxCoeff());
                   }
                   return w;
                 }});

  all.push_back({"full_matrix_psd_equivalence", kCount, [](Sampler& rng) {
                   int bad = 0;
                   for (int n = 0; n < 1000; ++n) {
                     const RealVector3 lam(rng.uniform(0.1, 2), rng.uniform(0.1, 2), rng.uniform(0.1, 2));
                     const double b = std::sqrt(rng.uniform(0.5, 1.5) * lam(0) * lam(1));
                     const RealMatrix3 o = rng.rotation();
                     const ComplexMatrix3 calA = kossakowski_matrix(o.transpose() * lam.asDiagonal() * o,
                                                                    o.transpose() * RealVector3(0, 0, b));
                     const bool small_psd = min_eigenvalue(calA) >= -1e-12;
                     const bool full_psd = min_eigenvalue(assemble_full_C(calA)) >= -1e-12;
                     if (small_psd != full_psd) ++bad;
                   }
                   return double(bad);
                 }});

  all.push_back({"generator_cross_forms", 1e-11, [](Sampler& rng) {
                   double w = 0.0;
                   for (int n = 0; n < 100; ++n) {
                     const KossakowskiBlock blk = rng.generic_bath();
                     const ComplexMatrix4 rho = rng.mixed_state();
                     const ComplexMatrix4 eq7 = rhs_equal_blocks(rho, blk);
                     const ComplexMatrix4 comp =
                         to_matrix(rhs_components(to_coefficients(rho).coefficients, blk), 0.0);
                     const ComplexMatrix4 diag = rhs_diagonal_form(rho, blk);
                     const ComplexMatrix4 full = rhs_general(rho, assemble_full_C(blk));
                     for (const ComplexMatrix4* a : {&eq7, &comp, &diag, &full})
                       for (const ComplexMatrix4* b : {&eq7, &comp, &diag, &full}) w = std::max(w, max_abs(*a - *b));
                   }
                   return w;
                 }});

  all.push_back({"trace_and_hermiticity", 1e-13, [](Sampler& rng) {
                   double w = 0.0;
                   for (int n = 0; n < 100; ++n) {
                     const KossakowskiBlock blk = rng.generic_bath();
                     const ComplexMatrix4 rho = rng.mixed_state();
                     for (const ComplexMatrix4& d :
                          {rhs_equal_blocks(rho, blk), rhs_diagonal_form(rho, blk),
                           rhs_general(rho, assemble_full_C(blk))}) {
                       w = std::max(w, std::abs(d.trace()));
                       w = std::max(w, hermiticity_error(d));
                     }
                   }
                   return w;
                 }});

  all.push_back({"tau_conservation", 1e-9, [](Sampler& rng) {
                   double w = 0.0;
                   for (int n = 0; n < 5; ++n) {
                     const KossakowskiBlock blk = rng.generic_bath();
                     const auto c = to_coefficients(rng.mixed_state()).coefficients;
                     w = std::max(w, evolve(c, blk, {20.0, 0.01, 100}).max_tau_drift());
                   }
                   return w;
                 }});

  all.push_back({"symmetric_sector_closed", 1e-12, [](Sampler& rng) {
                   double w = 0.0;
                   for (int n = 0; n < 5; ++n) {
                     const KossakowskiBlock blk = rng.generic_bath();
                     const auto c = to_coefficients(rng.symmetric_state()).coefficients;
                     for (const Sample& s : evolve(c, blk, {10.0, 0.01, 50}).samples)
                       w = std::max(w, antisymmetric_part(s.state));
                   }
                   return w;
                 }});

  all.push_back({"stationary_constraints", kCount, [](Sampler& rng) {
                   int bad = 0;
                   for (int n = 0; n < 1000; ++n) {
                     const StationaryFamily f = stationary_family(rng.aligned_bath(0.0, 2.0, 1.0));
                     const double t = 1e-12;
                     if (!(2 * f.R >= -t && 2 * f.R <= 1 + t)) ++bad;
                     if (!(f.M * f.M <= 2 * f.R + t)) ++bad;
                     if (!(f.M * f.M + 4 * f.N * f.N <= 1 + t)) ++bad;
                   }
                   return double(bad);
                 }});

  all.push_back({"closed_form_stationarity", 1e-12, [](Sampler& rng) {
                   double w = 0.0;
                   for (int n = 0; n < 100; ++n) {
                     const KossakowskiBlock blk = rng.aligned_bath();
                     w = std::max(w, max_abs(rhs_equal_blocks(stationary_family(blk).rho0_hat, blk)));
                   }
                   return w;
                 }});

  all.push_back({"asymptotic_map", 1e-12, [](Sampler& rng) {
                   double w = 0.0;
                   for (int n = 0; n < 100; ++n) {
                     const KossakowskiBlock blk = rng.aligned_bath();
                     const StationaryFamily f = stationary_family(blk);
                     const EquilibriumState eq = asymptotic_state(to_coefficients(rng.mixed_state()).coefficients, f);
                     w = std::max({w, eq.cross_check_residual, max_abs(rhs_equal_blocks(eq.state, blk))});
                   }
                   return w;
                 }});

  all.push_back({"null_space_oracle", 1e-9, [](Sampler& rng) {
                   double w = 0.0;
                   for (int n = 0; n < 20; ++n) {
                     const KossakowskiBlock blk = rng.aligned_bath();
                     const NullSpace ns = liouvillian_null_space(blk);
                     if (ns.dimension != 1 || !ns.full_rank_found) return 1.0;
                     const StationaryFamily f = stationary_family(blk);
                     for (double tau : {-3.0, -1.0, 0.0, 1.0}) {
                       const auto p = ns.point_at_tau(tau);
                       if (!p) return 1.0;
                       w = std::max(w, (p->flatten() - equilibrium_components(tau, f).coefficients.flatten())
                                           .cwiseAbs()
                                           .maxCoeff());
                     }
                   }
                   return w;
                 }});

  all.push_back({"commutant_contains_S", 1e-12, [](Sampler& rng) {
                   double w = 0.0;
                   for (int n = 0; n < 100; ++n) {
                     const CommutantReport r = commutant_check(rng.generic_bath());
                     w = std::max(w, *std::max_element(r.residuals.begin(), r.residuals.end()));
                   }
                   return w;
                 }});

  all.push_back({"ppt_matches_concurrence", kCount, [](Sampler& rng) {
                   int bad = 0;
                   for (int n = 0; n < 2000; ++n) {
                     // Bias half the draws toward the singlet to populate the entangled side.
                     ComplexMatrix4 rho = rng.mixed_state();
                     if (n % 2) rho = 0.5 * rho + 0.5 * basis().singlet;
                     const bool npt = min_pt_eigenvalue(rho) < -1e-10;
                     const bool ent = concurrence(rho) > 1e-10;
                     if (npt != ent) ++bad;
                   }
                   return double(bad);
                 }});

  all.push_back({"closed_concurrence_agreement", 1e-9, [](Sampler& rng) {
                   double w = 0.0;
                   for (int n = 0; n < 200; ++n) {
                     const StationaryFamily f = stationary_family(rng.aligned_bath());
                     const double tau = rng.uniform(-3.0, 1.0);
                     const EquilibriumState eq = equilibrium_components(tau, f);
                     // Singlet-sector branch only: skip states where the other X-state
                     // coherence dominates.
                     if (std::abs(eq.rho11 - eq.rho22) - 0.5 * (1.0 - 2.0 * eq.rho33) > -1e-9) continue;
                     w = std::max(w, std::abs(concurrence(eq.state) - concurrence_closed(f.M, f.R, tau).concurrence));
                   }
                   return w;
                 }});
  return all;
}

}  // namespace

std::vector<SuiteResult> run_self_check(const CheckOptions& options, std::ostream* log) {
  std::vector<SuiteResult> results;
  std::uint64_t index = 0;
  for (const Suite& suite : suites(options)) {
    // Each suite gets its own stream so results do not depend on suite order.
    Sampler rng(options.seed + 7919 * index++);
    SuiteResult r;
    r.name = suite.name;
    r.bound = suite.bound;
    try {
      r.worst = suite.run(rng);
      r.passed = r.worst < suite.bound;
    } catch (const std::exception&) {
      r.worst = INFINITY;
      r.passed = false;
    }
    if (log) {
      char line[160];
      std::snprintf(line, sizeof line, "%s %-30s worst=%.3e bound=%.1e\n", r.passed ? "PASS" : "FAIL",
                    r.name.c_str(), r.worst, r.bound);
      *log << line;
    }
    results.push_back(r);
  }
  return results;
}

}  // namespace commonbath
