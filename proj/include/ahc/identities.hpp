#pragma once

#include <string>
#include <vector>

#include "ahc/calculus.hpp"
#include "ahc/exterior.hpp"
#include "ahc/oracle.hpp"
#include "ahc/rational.hpp"

namespace ahc {

/// Scalar multiplier of the L^{j+r−1}α_r series in the main commutator
/// identity, evaluated exactly:
///   f(r) = (r(n−k+r)−j) + (−1)^r · j!(n−k−j+r)! / ((j+r−1)!(n−k−j)!).
/// Requires n ≥ 1, k ≥ 0, 0 ≤ j ≤ n−k, r ≥ 0, and j+r ≥ 1 (the r = 0,
/// j = 0 slot would need a negative factorial and is never summed).
Rational f_coeff(int n, int k, int j, int r);

/// One verified identity instance. residual_rel is always
/// residual_abs / max(lhs_norm, rhs_norm, 1e−14); norms are fiber-metric
/// norms so tolerances are scale-free.
struct IdentityResidual {
  std::string identity_id;
  std::string structure_descr;
  int k = -1; ///< −1 when not applicable
  int j = -1;
  int p = -1;
  int q = -1;
  double lhs_norm = 0.0;
  double rhs_norm = 0.0;
  double residual_abs = 0.0;
  double residual_rel = 0.0;
  bool pass = false;
};

IdentityResidual make_residual(const std::string &id,
                               const AlmostHermitianStructure &s,
                               const CForm &lhs, const CForm &rhs,
                               double tol_rel, double tol_abs, int k = -1,
                               int j = -1, int p = -1, int q = -1);
IdentityResidual make_residual_jet(const std::string &id,
                                   const AlmostHermitianStructure &s,
                                   const JetForm &lhs, const JetForm &rhs,
                                   double tol_rel, double tol_abs,
                                   int k = -1, int j = -1, int p = -1,
                                   int q = -1);

/// Random degree-k germ that is primitive through all jet slots (the
/// jet-level Lefschetz projector applied to a random form), scaled to
/// roughly unit fiber norm.  Requires k ≤ n.
JetForm random_primitive_germ(int k, const AlmostHermitianStructure &s,
                              SplitMix64 &rng);

/// Random germ of pure bidegree (p,q) through all jet slots.
JetForm random_pure_germ(int p, int q, const AlmostHermitianStructure &s,
                         SplitMix64 &rng);

/// Both sides of the main commutator identity for η = L^j α, split into
/// the individual terms so degenerations can be checked term by term.
struct TheoremTerms {
  int k = 0;
  int j = 0;
  CForm lhs_comm;      ///< [Λ,d]L^jα
  CForm lhs_star;      ///< ⋆𝕀⁻¹d𝕀⋆L^jα
  CForm rhs_adjoint;   ///< (1/(j+1))·𝕀⁻¹[d*,Λ]𝕀L^{j+1}α
  CForm rhs_dL_lambda; ///< j·Λ[d,L]L^{j−1}α
  CForm rhs_dL;        ///< j(j−1)(k−n+j−1)·[d,L]L^{j−2}α
  CForm rhs_series;    ///< Σ_{r≥2} f(r)·L^{j+r−1}α_r
  CForm lhs;           ///< lhs_comm − lhs_star
  CForm rhs;           ///< sum of the four RHS terms
  PrimitiveDecomposition<Cplx> dec; ///< of the value of dα
};

/// α must be primitive through all jet slots (checked to 1e−10 relative)
/// and homogeneous of degree k with 0 ≤ j ≤ n−k.  inject_bug flips the
/// sign of one RHS term — a harness self-test mutation, never correct.
TheoremTerms theorem_sides(const JetForm &alpha, int j,
                           const AlmostHermitianStructure &s,
                           bool inject_bug = false);

/// Residual of the main identity in the two-sided framing
/// [Λ,d]η = ⋆𝕀⁻¹d𝕀⋆η + RHS, whose left side is generically O(1) so the
/// relative residual stays meaningful under every degeneration.
IdentityResidual verify_theorem(const JetForm &alpha, int j,
                                const AlmostHermitianStructure &s,
                                double tol_rel, double tol_abs,
                                bool inject_bug = false);

/// Intermediate displays of the identity's derivation, each one residual:
///   split_d_L_power       ⋆𝕀⁻¹d𝕀⋆η split through dL^{n−k−j}
///   first_summand_series  the L^{n−k−j}dα summand as an α_r series
///   star_conj_assembled   full expansion of ⋆𝕀⁻¹d𝕀⋆η
///   lambda_d_expansion    ΛdL^jα as series + commutator term
///   d_lambda_expansion    dΛL^jα as series + commutator term
///   commutator_expansion  [Λ,d]η fully expanded
std::vector<IdentityResidual>
verify_proof_displays(const JetForm &alpha, int j,
                      const AlmostHermitianStructure &s, double tol_rel,
                      double tol_abs);

/// The (0,q) identity Λ∂α = i∂̄*α + i[Λ,∂̄*]Lα plus its derivation:
/// the three expansions, the (0,q−1)⊕(1,q−2) bidegree closure, the
/// separate match of the (1,q−2) parts, and the purity of the f(2)Lα₂
/// term.  First entry is the main identity.
std::vector<IdentityResidual>
verify_prop_0q(const JetForm &alpha, const AlmostHermitianStructure &s,
               double tol_rel, double tol_abs);

/// The corrected (0,2) identity Λμα = −iμ̄*α − i[Λ,μ̄*]Lα.
IdentityResidual verify_mu_identity(const JetForm &alpha,
                                    const AlmostHermitianStructure &s,
                                    double tol_rel, double tol_abs);

/// Mutation detector: the uncorrected identity [Λ,μ] = −iμ̄* must FAIL
/// (residual ≥ 1e−3) on a crafted non-integrable instance where the
/// correction term is active (needs n ≥ 3 so that Lα ≠ 0).  The germ is
/// chosen among `tries` draws to maximize the uncorrected residual;
/// pass means the detector fired.
IdentityResidual craft_mu_detector(const AlmostHermitianStructure &s,
                                   SplitMix64 &rng, int tries = 8);

/// One pass over the supporting-lemma suite with fresh random forms:
/// star_involution, star_lambda_swap, lefschetz_power_commutator,
/// dL_power_rule, star_dL_adjoint, conj_{mubar,delbar,del,mu},
/// conj_d_signs, star_L_primitive, I_involution.
std::vector<IdentityResidual>
verify_lemmas(const AlmostHermitianStructure &s, SplitMix64 &rng,
              double tol_rel, double tol_abs);

/// Numerical witness that f(0) and f(1) vanish: adding their terms to the
/// RHS changes it by < 1e−12.
IdentityResidual witness_f_vanishing(const JetForm &alpha, int j,
                                     const AlmostHermitianStructure &s);

/// Numerical witness that [Λ,∂̄*] is zeroth order: on a constant form a
/// scaled by a jet function f, [Λ,∂̄*](fa) = f(0)·[Λ,∂̄*]a to 1e−11.
IdentityResidual
witness_adjoint_zeroth_order(const AlmostHermitianStructure &s,
                             SplitMix64 &rng);

/// Dense-oracle suite: per-operator basis-element equivalence at 1e−12
/// plus a structured-vs-oracle comparison of the main identity's left
/// side on a random primitive germ.
std::vector<IdentityResidual>
verify_oracle_suite(const AlmostHermitianStructure &s, SplitMix64 &rng);

} // namespace ahc
