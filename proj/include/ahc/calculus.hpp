#pragma once

#include <string>

#include "ahc/exterior.hpp"
#include "ahc/form.hpp"
#include "ahc/structure.hpp"

namespace ahc {

/// d(Σ f_S dx^S) = Σ_i Σ_S (∂f_S/∂x^i) dx^i ∧ dx^S, evaluated at the
/// point: one jet order is consumed, so order-1 coefficients give a scalar
/// form.
CForm exterior_d(const JetForm &a);

/// d keeping one derivative order: order-2 coefficients in, order-1 out.
JetForm exterior_d_jet(const JetForm &a);

/// Names for the bidegree components of d; the bidegree (r,s) of each is
///   mubar: (−1,2)   delbar: (0,1)   del: (1,0)   mu: (2,−1).
enum class DComp { mubar, delbar, del, mu };
const char *dcomp_name(DComp c);
void dcomp_bidegree(DComp c, int &r, int &s);

/// Component of d on a pure (p,q) jet germ: bigrade projection of d(a)
/// onto (p+r, q+s).  The purity of a is checked, not trusted.
CForm d_component(const JetForm &a, DComp which,
                  const AlmostHermitianStructure &s);

/// Operators whose adjoint is taken; `d` covers the total differential.
enum class AdjOp { d, mubar, delbar, del, mu };
const char *adjop_name(AdjOp o);

/// δ* = −⋆δ̃⋆ where δ̃ is the conjugate component (bars swapped: the
/// adjoint of ∂̄ applies ∂ between the stars), matching the bidegrees
/// |∂̄*| = (0,−1) etc.; d* = −⋆d⋆.  The inner ⋆ is evaluated on the jet
/// germ, the outer at the point.  Mixed-bidegree inputs are split first.
CForm adjoint_op(AdjOp which, const JetForm &a,
                 const AlmostHermitianStructure &s);

/// [d,L] a = dω ∧ a, a zeroth-order operator.
CForm commutator_dL(const JetForm &a, const AlmostHermitianStructure &s);
CForm commutator_dL(const CForm &a, const AlmostHermitianStructure &s);

/// The same commutator evaluated literally as d(ω∧a) − ω∧d(a); kept as a
/// self-oracle for commutator_dL.
CForm commutator_dL_direct(const JetForm &a,
                           const AlmostHermitianStructure &s);

/// τ̄ = [Λ,[∂̄,L]], the zeroth-order torsion operator, assembled by the
/// graded commutator convention [A,B] = AB − (−1)^{|A||B|}BA (both factors
/// here have even degree product, so both commutators are plain).
CForm torsion_taubar(const JetForm &a, const AlmostHermitianStructure &s);

} // namespace ahc
