#pragma once

#include <string>
#include <vector>

#include "ahc/exterior.hpp"
#include "ahc/structure.hpp"

namespace ahc {

/// Operator on the full 2^{2n} exterior basis with first-order jet slots:
/// M(x) = v + Σ_i x_i g[i].  This is the dense verification path — every
/// operator an explicit matrix, built by routes independent of the
/// structured per-degree implementations.
struct OracleMat {
  Eigen::MatrixXcd v;
  std::vector<Eigen::MatrixXcd> g;

  int size() const { return static_cast<int>(v.rows()); }
  int dim() const { return static_cast<int>(g.size()); }
};

/// Jet coefficient column over the full basis (value + gradient slots).
struct OracleJetVec {
  Eigen::VectorXcd v;
  std::vector<Eigen::VectorXcd> g;
};

OracleJetVec to_oracle_vec(const JetForm &a);
JetForm from_oracle_vec(const OracleJetVec &x, int two_n);
Eigen::VectorXcd to_value_vec(const CForm &a);
CForm from_value_vec(const Eigen::VectorXcd &v, int two_n);

/// (A·B)(x) to first order, entries composed in the jet ring.
OracleMat oracle_mul(const OracleMat &A, const OracleMat &B);
/// Apply at jet level: value and gradient slots of M(x)·a(x).
OracleJetVec oracle_apply(const OracleMat &M, const OracleJetVec &x);
/// Apply the value part only.
Eigen::VectorXcd oracle_apply_value(const OracleMat &M,
                                    const Eigen::VectorXcd &x);

/// All operator tables of one structure, oracle route:
///   gram  — blockwise Gram matrix of ⟨dx^R,dx^S⟩, minors via adjugate
///   vol   — jet of sqrt(det g) (equals the ω^n/n! coefficient since the
///           generators enforce positive orientation)
///   star  — one full-basis wedge-pairing LU solve
///   L     — multiplication by ω
///   lam   — gram⁻¹ Lᵀ gram (metric adjoint, not ⋆⁻¹L⋆)
///   D     — derivation extending α ↦ α∘J (eigenvalue i(p−q) on (p,q))
///   proj  — Lagrange interpolation polynomials of D: projector onto
///           p−q = c at index c+n
///   I,Ii  — Σ_c i^{±c} proj[c]
///   d_pt  — d as an N×(1+2n)N matrix from jet slots to point values
struct OracleTables {
  int n = 0;
  int two_n = 0;
  OracleMat gram;
  Jet vol;
  OracleMat star;
  OracleMat L;
  OracleMat lam;
  OracleMat D;
  std::vector<OracleMat> proj;
  OracleMat I;
  OracleMat I_inv;
  Eigen::MatrixXcd d_pt;
};

OracleTables build_oracle(const AlmostHermitianStructure &s);

/// Value of d(a) at the point through the d_pt matrix.
CForm oracle_d_value(const OracleTables &T, const JetForm &a);

/// Lefschetz decomposition by primitive-kernel bases and least squares
/// (kernel of the oracle Λ per degree, components via one dense solve).
PrimitiveDecomposition<Cplx> oracle_lefschetz(const OracleTables &T,
                                              const CForm &a);

/// Oracle-route evaluation of the identity's left side
/// [Λ,d]L^jα − ⋆𝕀⁻¹d𝕀⋆L^jα, every operator applied as a dense matrix.
CForm oracle_theorem_lhs(const OracleTables &T, const JetForm &alpha, int j);

/// Worst mismatch between a structured operator and its oracle matrix over
/// every basis element (constant germs, plus coordinate germs for d).
struct OracleComparison {
  std::string op;
  double max_err = 0.0;
};

std::vector<OracleComparison>
oracle_compare_all(const AlmostHermitianStructure &s);

} // namespace ahc
