#pragma once

#include <vector>

#include "ahc/form.hpp"
#include "ahc/rng.hpp"
#include "ahc/structure.hpp"

namespace ahc {

/// Hodge star determined by g and vol = ω^n/n!: the unique form with
/// α ∧ ⋆β = ⟨α,β⟩_g vol for real α, β, extended complex-linearly.  Computed
/// per degree by solving the wedge-pairing system against the Gram matrix
/// of g on that degree.  Maps 𝒜^{p,q} → 𝒜^{n−q,n−p}.
CForm hodge_star(const CForm &a, const AlmostHermitianStructure &s);
JetForm hodge_star(const JetForm &a, const AlmostHermitianStructure &s);

/// ⋆⁻¹ = (−1)^k ⋆ on 𝒜^k (the ambient dimension 2n is even).
CForm hodge_star_inv(const CForm &a, const AlmostHermitianStructure &s);
JetForm hodge_star_inv(const JetForm &a, const AlmostHermitianStructure &s);

/// L(η) = ω ∧ η.
CForm lefschetz_L(const CForm &a, const AlmostHermitianStructure &s);
JetForm lefschetz_L(const JetForm &a, const AlmostHermitianStructure &s);

/// Λ = L* = ⋆⁻¹L⋆.
CForm lambda(const CForm &a, const AlmostHermitianStructure &s);
JetForm lambda(const JetForm &a, const AlmostHermitianStructure &s);

/// L^m and Λ^m convenience powers (m ≥ 0).
template <class T>
Form<T> lefschetz_L_pow(Form<T> a, int m, const AlmostHermitianStructure &s) {
  for (int i = 0; i < m; ++i)
    a = lefschetz_L(a, s);
  return a;
}
template <class T>
Form<T> lambda_pow(Form<T> a, int m, const AlmostHermitianStructure &s) {
  for (int i = 0; i < m; ++i)
    a = lambda(a, s);
  return a;
}

/// Projection onto 𝒜^{p,q}: each coordinate covector is split through the
/// eigenprojectors (1 ∓ i·Jᵀ)/2 and the wedge expansion is grouped by the
/// number of (1,0) factors.  Pieces of degree ≠ p+q project to zero.
CForm bigrade_project(const CForm &a, int p, int q,
                      const AlmostHermitianStructure &s);
JetForm bigrade_project(const JetForm &a, int p, int q,
                        const AlmostHermitianStructure &s);

/// 𝕀 multiplies the (p,q) piece by i^{p−q}; 𝕀⁻¹ by (−i)^{p−q}.
CForm apply_I(const CForm &a, const AlmostHermitianStructure &s);
JetForm apply_I(const JetForm &a, const AlmostHermitianStructure &s);
CForm apply_I_inv(const CForm &a, const AlmostHermitianStructure &s);
JetForm apply_I_inv(const JetForm &a, const AlmostHermitianStructure &s);

/// Lefschetz decomposition a = Σ_r L^r α_r with Λα_r = 0, stored with the
/// components indexed by r (zero below the first admissible r); alpha(r)
/// beyond the stored range is the zero form.
template <class T> struct PrimitiveDecomposition {
  int base_degree = 0;
  int r_min = 0;
  std::vector<Form<T>> components; // index r, size r_max + 1
  Form<T> zero_form;

  const Form<T> &alpha(int r) const {
    if (r < 0 || r >= static_cast<int>(components.size()))
      return zero_form;
    return components[r];
  }
  int r_max() const { return static_cast<int>(components.size()) - 1; }
};

/// Solves the joint linear system {Σ_r L^r α_r = a, Λα_r = 0} over the
/// coefficient ring in one least-squares solve; r ranges over
/// max(0, ⌈(k−n)/2⌉) ≤ r ≤ ⌊k/2⌋.
PrimitiveDecomposition<Cplx>
lefschetz_decompose(const CForm &a, const AlmostHermitianStructure &s);
PrimitiveDecomposition<Jet>
lefschetz_decompose(const JetForm &a, const AlmostHermitianStructure &s);

/// Hermitian inner product with a ∧ ⋆b̄ = ⟨a,b⟩vol; pieces of different
/// degree are orthogonal by convention.
Cplx inner_product(const CForm &a, const CForm &b,
                   const AlmostHermitianStructure &s);

/// ‖a‖ in the fiber metric.
double form_norm(const CForm &a, const AlmostHermitianStructure &s);

/// Fiber-metric norm over every jet slot (value, gradients, hessian).
double jet_form_norm(const JetForm &a, const AlmostHermitianStructure &s);

/// The degree-k piece of a as a compact coefficient column (canonical
/// multi-index order), and back.
Eigen::VectorXcd degree_coeffs(const CForm &a, int k);
CForm from_degree_coeffs(int two_n, int k, const Eigen::VectorXcd &c);
JetMatrix degree_jet_coeffs(const JetForm &a, int k);
JetForm from_degree_jet_coeffs(int two_n, int k, const JetMatrix &col,
                               const Jet &zero);

/// Random degree-k forms with coefficients drawn from the standard complex
/// normal (all jet slots populated at the requested order).
CForm random_cform(int two_n, int k, SplitMix64 &rng);
JetForm random_jetform(int two_n, int k, int order, SplitMix64 &rng);

} // namespace ahc
