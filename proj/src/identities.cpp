#include "ahc/identities.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ahc/errors.hpp"

namespace ahc {
namespace {

double neg1pow(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

CForm zero_cform(const AlmostHermitianStructure &s) {
  return CForm(s.two_n(), Cplx(0.0, 0.0));
}

CForm L_pow(CForm a, int m, const AlmostHermitianStructure &s) {
  for (int i = 0; i < m; ++i)
    a = lefschetz_L(a, s);
  return a;
}

JetForm L_pow(JetForm a, int m, const AlmostHermitianStructure &s) {
  for (int i = 0; i < m; ++i)
    a = lefschetz_L(a, s);
  return a;
}

/// [Λ,d] a = Λ(da) − d(Λa), evaluated at the point.
CForm comm_lambda_d(const JetForm &a, const AlmostHermitianStructure &s) {
  return lambda(exterior_d(a), s) - exterior_d(lambda(a, s));
}

/// ⋆𝕀⁻¹d𝕀⋆ a (inner operators on the jet germ, the rest at the point).
CForm star_conj_d(const JetForm &a, const AlmostHermitianStructure &s) {
  return hodge_star(
      apply_I_inv(exterior_d(apply_I(hodge_star(a, s), s)), s), s);
}

/// 𝕀⁻¹[d*,Λ]𝕀 a with [d*,Λ] = d*Λ − Λd*.
CForm conj_adjoint_comm(const JetForm &a, const AlmostHermitianStructure &s) {
  const JetForm ia = apply_I(a, s);
  const CForm dstar_lam = adjoint_op(AdjOp::d, lambda(ia, s), s);
  const CForm lam_dstar = lambda(adjoint_op(AdjOp::d, ia, s), s);
  return apply_I_inv(dstar_lam - lam_dstar, s);
}

/// [Λ,δ*] a = Λ(δ*a) − δ*(Λa) for a bidegree component δ of d.
CForm comm_lambda_adj(AdjOp which, const JetForm &a,
                      const AlmostHermitianStructure &s) {
  return lambda(adjoint_op(which, a, s), s) -
         adjoint_op(which, lambda(a, s), s);
}

double fact_ratio(int a, int b) {
  return (Rational::factorial(a) / Rational::factorial(b)).to_double();
}

void require_pure(const JetForm &a, int p, int q,
                  const AlmostHermitianStructure &s) {
  const JetForm diff = a - bigrade_project(a, p, q, s);
  if (jet_form_norm(diff, s) >
      1e-10 * std::max(1.0, jet_form_norm(a, s)))
    throw BidegreeError("germ is not of pure bidegree (" +
                        std::to_string(p) + "," + std::to_string(q) + ")");
}

int germ_degree(const JetForm &a) {
  const int k = a.homogeneous_degree(1e-12 * a.max_abs());
  if (k < 0)
    throw DimensionError("germ is zero; no homogeneous degree");
  return k;
}

} // namespace

Rational f_coeff(int n, int k, int j, int r) {
  if (n < 1 || k < 0 || j < 0 || r < 0)
    throw std::invalid_argument("f_coeff: parameters must be nonnegative");
  if (k > 2 * n)
    throw std::invalid_argument("f_coeff: degree exceeds fiber dimension");
  if (j > n - k)
    throw std::invalid_argument("f_coeff: j exceeds n-k");
  if (j + r < 1)
    throw std::invalid_argument(
        "f_coeff: j = r = 0 needs the factorial of -1");
  const Rational lead(static_cast<long long>(r) * (n - k + r) - j);
  const Rational sign((r % 2 == 0) ? 1 : -1);
  const Rational frac = Rational::factorial(j) *
                        Rational::factorial(n - k - j + r) /
                        (Rational::factorial(j + r - 1) *
                         Rational::factorial(n - k - j));
  return lead + sign * frac;
}

IdentityResidual make_residual(const std::string &id,
                               const AlmostHermitianStructure &s,
                               const CForm &lhs, const CForm &rhs,
                               double tol_rel, double tol_abs, int k, int j,
                               int p, int q) {
  IdentityResidual r;
  r.identity_id = id;
  r.structure_descr = s.descr;
  r.k = k;
  r.j = j;
  r.p = p;
  r.q = q;
  r.lhs_norm = form_norm(lhs, s);
  r.rhs_norm = form_norm(rhs, s);
  r.residual_abs = form_norm(lhs - rhs, s);
  r.residual_rel =
      r.residual_abs / std::max({r.lhs_norm, r.rhs_norm, 1e-14});
  r.pass = (r.residual_rel <= tol_rel) || (r.residual_abs <= tol_abs);
  return r;
}

IdentityResidual make_residual_jet(const std::string &id,
                                   const AlmostHermitianStructure &s,
                                   const JetForm &lhs, const JetForm &rhs,
                                   double tol_rel, double tol_abs, int k,
                                   int j, int p, int q) {
  IdentityResidual r;
  r.identity_id = id;
  r.structure_descr = s.descr;
  r.k = k;
  r.j = j;
  r.p = p;
  r.q = q;
  r.lhs_norm = jet_form_norm(lhs, s);
  r.rhs_norm = jet_form_norm(rhs, s);
  r.residual_abs = jet_form_norm(lhs - rhs, s);
  r.residual_rel =
      r.residual_abs / std::max({r.lhs_norm, r.rhs_norm, 1e-14});
  r.pass = (r.residual_rel <= tol_rel) || (r.residual_abs <= tol_abs);
  return r;
}

JetForm random_primitive_germ(int k, const AlmostHermitianStructure &s,
                              SplitMix64 &rng) {
  if (k < 0 || k > s.n)
    throw DimensionError("primitive germs need 0 <= k <= n");
  for (int attempt = 0; attempt < 32; ++attempt) {
    const JetForm a = random_jetform(s.two_n(), k, s.order, rng);
    const JetForm prim = lefschetz_decompose(a, s).alpha(0);
    const double nn = jet_form_norm(prim, s);
    if (nn > 1e-3)
      return prim * Cplx(1.0 / nn, 0.0);
  }
  throw InternalError("could not draw a nonzero primitive germ");
}

JetForm random_pure_germ(int p, int q, const AlmostHermitianStructure &s,
                         SplitMix64 &rng) {
  if (p < 0 || q < 0 || p > s.n || q > s.n)
    throw DimensionError("pure germs need 0 <= p,q <= n");
  for (int attempt = 0; attempt < 32; ++attempt) {
    const JetForm a = random_jetform(s.two_n(), p + q, s.order, rng);
    const JetForm pure = bigrade_project(a, p, q, s);
    const double nn = jet_form_norm(pure, s);
    if (nn > 1e-3)
      return pure * Cplx(1.0 / nn, 0.0);
  }
  throw InternalError("could not draw a nonzero pure-bidegree germ");
}

TheoremTerms theorem_sides(const JetForm &alpha, int j,
                           const AlmostHermitianStructure &s,
                           bool inject_bug) {
  const int n = s.n;
  const int k = germ_degree(alpha);
  if (j < 0 || j > n - k)
    throw DimensionError("L-power j out of range [0, n-k]");
  if (jet_form_norm(lambda(alpha, s), s) >
      1e-10 * std::max(1.0, jet_form_norm(alpha, s)))
    throw BidegreeError("germ is not primitive through its jet slots");

  TheoremTerms T;
  T.k = k;
  T.j = j;

  const JetForm eta = L_pow(alpha, j, s);
  T.lhs_comm = comm_lambda_d(eta, s);
  T.lhs_star = star_conj_d(eta, s);

  T.rhs_adjoint = conj_adjoint_comm(L_pow(alpha, j + 1, s), s) *
                  Cplx(1.0 / (j + 1), 0.0);
  T.rhs_dL_lambda =
      (j >= 1)
          ? lambda(commutator_dL(L_pow(alpha, j - 1, s), s), s) *
                Cplx(static_cast<double>(j), 0.0)
          : zero_cform(s);
  T.rhs_dL =
      (j >= 2)
          ? commutator_dL(L_pow(alpha, j - 2, s), s) *
                Cplx(static_cast<double>(j) * (j - 1) * (k - n + j - 1), 0.0)
          : zero_cform(s);

  T.dec = lefschetz_decompose(exterior_d(alpha), s);
  T.rhs_series = zero_cform(s);
  const int rmax = (k + 1) / 2;
  for (int r = 2; r <= rmax; ++r)
    T.rhs_series += L_pow(T.dec.alpha(r), j + r - 1, s) *
                    f_coeff(n, k, j, r).to_double();

  if (inject_bug)
    T.rhs_adjoint = T.rhs_adjoint * Cplx(-1.0, 0.0);

  T.lhs = T.lhs_comm - T.lhs_star;
  T.rhs = T.rhs_adjoint + T.rhs_dL_lambda + T.rhs_dL + T.rhs_series;
  return T;
}

IdentityResidual verify_theorem(const JetForm &alpha, int j,
                                const AlmostHermitianStructure &s,
                                double tol_rel, double tol_abs,
                                bool inject_bug) {
  const TheoremTerms T = theorem_sides(alpha, j, s, inject_bug);
  // Two-sided framing [Λ,d]η = ⋆𝕀⁻¹d𝕀⋆η + RHS: the commutator side is
  // generically O(1), so the relative residual stays meaningful even when
  // every correction term degenerates (Kaehler case) and the one-sided
  // difference would be comparing noise against zero.
  return make_residual("main_commutator_identity", s, T.lhs_comm,
                       T.lhs_star + T.rhs, tol_rel, tol_abs, T.k, T.j);
}

std::vector<IdentityResidual>
verify_proof_displays(const JetForm &alpha, int j,
                      const AlmostHermitianStructure &s, double tol_rel,
                      double tol_abs) {
  const int n = s.n;
  const TheoremTerms T = theorem_sides(alpha, j, s);
  const int k = T.k;
  const int m = n - k - j;
  const int rmax = (k + 1) / 2;
  const double sgnA = neg1pow(k * (k + 1) / 2 + k);
  std::vector<IdentityResidual> out;

  // ⋆𝕀⁻¹d𝕀⋆L^jα = ±(j!/m!)⋆𝕀⁻¹L^m dα ± (j!/(m−1)!)⋆𝕀⁻¹[d,L]L^{m−1}α.
  const CForm da = exterior_d(alpha);
  const CForm termA1 =
      hodge_star(apply_I_inv(L_pow(da, m, s), s), s) *
      Cplx(sgnA * fact_ratio(j, m), 0.0);
  CForm termA2 = zero_cform(s);
  if (m >= 1)
    termA2 =
        hodge_star(apply_I_inv(commutator_dL(L_pow(alpha, m - 1, s), s), s),
                   s) *
        Cplx(sgnA * fact_ratio(j, m - 1), 0.0);
  out.push_back(make_residual("split_d_L_power", s, T.lhs_star,
                              termA1 + termA2, tol_rel, tol_abs, k, j));

  // The first summand as a series over the primitive components of dα.
  CForm bseries = zero_cform(s);
  for (int r = 0; r <= rmax; ++r) {
    if (j + r - 1 < 0)
      continue; // j = r = 0: the L^{n−k}α₀ term, identically zero
    const double c =
        neg1pow(r + 1) *
        (Rational::factorial(j) * Rational::factorial(m + r) /
         (Rational::factorial(j + r - 1) * Rational::factorial(m)))
            .to_double();
    bseries += L_pow(T.dec.alpha(r), j + r - 1, s) * Cplx(c, 0.0);
  }
  out.push_back(make_residual("first_summand_series", s, termA1, bseries,
                              tol_rel, tol_abs, k, j));

  // Assembled: ⋆𝕀⁻¹d𝕀⋆η = series − (1/(j+1))𝕀⁻¹[d*,Λ]𝕀L^{j+1}α.
  out.push_back(make_residual("star_conj_assembled", s, T.lhs_star,
                              bseries - T.rhs_adjoint, tol_rel, tol_abs, k,
                              j));

  // ΛdL^jα = −Σ_r (j+r)(k+1−2r −n+j+r−1) L^{j+r−1}α_r + jΛ[d,L]L^{j−1}α.
  const JetForm eta = L_pow(alpha, j, s);
  CForm dseries = zero_cform(s);
  for (int r = 0; r <= rmax; ++r) {
    if (j + r - 1 < 0)
      continue;
    const double c = -static_cast<double>(j + r) *
                     ((k + 1 - 2 * r) - n + (j + r) - 1);
    dseries += L_pow(T.dec.alpha(r), j + r - 1, s) * Cplx(c, 0.0);
  }
  out.push_back(make_residual("lambda_d_expansion", s,
                              lambda(exterior_d(eta), s),
                              dseries + T.rhs_dL_lambda, tol_rel, tol_abs,
                              k, j));

  // dΛL^jα = −j(k−n+j−1)[ Σ_r L^{j+r−1}α_r + (j−1)[d,L]L^{j−2}α ].
  CForm eseries = zero_cform(s);
  if (j >= 1) {
    const double ce = -static_cast<double>(j) * (k - n + j - 1);
    for (int r = 0; r <= rmax; ++r)
      eseries += L_pow(T.dec.alpha(r), j + r - 1, s) * Cplx(ce, 0.0);
    if (j >= 2)
      eseries += commutator_dL(L_pow(alpha, j - 2, s), s) *
                 Cplx(ce * (j - 1), 0.0);
  }
  out.push_back(make_residual("d_lambda_expansion", s,
                              exterior_d(lambda(eta, s)), eseries, tol_rel,
                              tol_abs, k, j));

  // [Λ,d]L^jα = Σ_r (r(n−k+r)−j) L^{j+r−1}α_r + jΛ[d,L]L^{j−1}α
  //             + j(j−1)(k−n+j−1)[d,L]L^{j−2}α.
  CForm fseries = zero_cform(s);
  for (int r = 0; r <= rmax; ++r) {
    if (j + r - 1 < 0)
      continue;
    const double c = static_cast<double>(r) * (n - k + r) - j;
    fseries += L_pow(T.dec.alpha(r), j + r - 1, s) * Cplx(c, 0.0);
  }
  out.push_back(make_residual("commutator_expansion", s, T.lhs_comm,
                              fseries + T.rhs_dL_lambda + T.rhs_dL, tol_rel,
                              tol_abs, k, j));
  return out;
}

std::vector<IdentityResidual>
verify_prop_0q(const JetForm &alpha, const AlmostHermitianStructure &s,
               double tol_rel, double tol_abs) {
  const int n = s.n;
  const int q = germ_degree(alpha);
  require_pure(alpha, 0, q, s);
  const Cplx I(0.0, 1.0);
  std::vector<IdentityResidual> out;

  const CForm del_a = d_component(alpha, DComp::del, s);
  const CForm mu_a = d_component(alpha, DComp::mu, s);
  const CForm lam_del = lambda(del_a, s);
  const CForm lam_mu = lambda(mu_a, s);
  const CForm dbar_star = adjoint_op(AdjOp::delbar, alpha, s);
  const CForm mubar_star = adjoint_op(AdjOp::mubar, alpha, s);
  const JetForm La = lefschetz_L(alpha, s);
  const CForm comm_dbar = comm_lambda_adj(AdjOp::delbar, La, s);
  const CForm comm_mubar = comm_lambda_adj(AdjOp::mubar, La, s);

  // Λ∂α = i∂̄*α + i[Λ,∂̄*]Lα.
  out.push_back(make_residual("deg0q_main", s, lam_del,
                              dbar_star * I + comm_dbar * I, tol_rel,
                              tol_abs, q, 0, 0, q));

  // [Λ,d]α = Λ(∂+μ)α — the other components of d cannot hit Λ's image.
  out.push_back(make_residual("deg0q_lhs_commutator", s,
                              comm_lambda_d(alpha, s), lam_del + lam_mu,
                              tol_rel, tol_abs, q, 0, 0, q));

  // ⋆𝕀⁻¹d𝕀⋆α = i(∂̄* − μ̄*)α.
  out.push_back(make_residual("deg0q_star_conj", s, star_conj_d(alpha, s),
                              (dbar_star - mubar_star) * I, tol_rel,
                              tol_abs, q, 0, 0, q));

  // 𝕀⁻¹[d*,Λ]𝕀Lα = i[Λ,∂̄*−μ̄*]Lα.
  out.push_back(make_residual("deg0q_adjoint_conj", s,
                              conj_adjoint_comm(La, s),
                              (comm_dbar - comm_mubar) * I, tol_rel,
                              tol_abs, q, 0, 0, q));

  // The f(2)Lα₂ term and the conjugate-part identity
  // Λμα = −iμ̄*α − i[Λ,μ̄*]Lα + f(2)Lα₂.
  const auto dec = lefschetz_decompose(exterior_d(alpha), s);
  CForm fterm = zero_cform(s);
  if ((q + 1) / 2 >= 2)
    fterm = lefschetz_L(dec.alpha(2), s) * f_coeff(n, q, 0, 2).to_double();
  out.push_back(make_residual(
      "deg0q_conjugate_part", s, lam_mu,
      mubar_star * (-I) + comm_mubar * (-I) + fterm, tol_rel, tol_abs, q, 0,
      0, q));
  if (q >= 2)
    out.push_back(make_residual("deg0q_f_term_bidegree", s, fterm,
                                bigrade_project(fterm, 1, q - 2, s),
                                tol_rel, tol_abs, q, 0, 1, q - 2));

  // Both sides of the main identity at j = 0 live in (0,q−1) ⊕ (1,q−2),
  // and their (1,q−2) parts match separately.
  const TheoremTerms T = theorem_sides(alpha, 0, s);
  auto closure = [&](const CForm &x) {
    CForm proj = bigrade_project(x, 0, q - 1, s);
    if (q >= 2)
      proj += bigrade_project(x, 1, q - 2, s);
    return proj;
  };
  out.push_back(make_residual("deg0q_lhs_closure", s, T.lhs,
                              closure(T.lhs), tol_rel, tol_abs, q, 0, 0,
                              q));
  out.push_back(make_residual("deg0q_rhs_closure", s, T.rhs,
                              closure(T.rhs), tol_rel, tol_abs, q, 0, 0,
                              q));
  if (q >= 2)
    out.push_back(make_residual("deg0q_conjugate_projected", s,
                                bigrade_project(T.lhs, 1, q - 2, s),
                                bigrade_project(T.rhs, 1, q - 2, s),
                                tol_rel, tol_abs, q, 0, 1, q - 2));
  return out;
}

IdentityResidual verify_mu_identity(const JetForm &alpha,
                                    const AlmostHermitianStructure &s,
                                    double tol_rel, double tol_abs) {
  require_pure(alpha, 0, 2, s);
  const Cplx I(0.0, 1.0);
  const CForm lam_mu = lambda(d_component(alpha, DComp::mu, s), s);
  const CForm mubar_star = adjoint_op(AdjOp::mubar, alpha, s);
  const CForm comm_mubar =
      comm_lambda_adj(AdjOp::mubar, lefschetz_L(alpha, s), s);
  return make_residual("mu_identity", s, lam_mu,
                       mubar_star * (-I) + comm_mubar * (-I), tol_rel,
                       tol_abs, 2, 0, 0, 2);
}

IdentityResidual craft_mu_detector(const AlmostHermitianStructure &s,
                                   SplitMix64 &rng, int tries) {
  if (s.n < 3)
    throw DimensionError(
        "the correction term [Λ,μ̄*]Lα needs n >= 3 to be visible");
  const Cplx I(0.0, 1.0);
  IdentityResidual best;
  for (int t = 0; t < tries; ++t) {
    const JetForm alpha = random_pure_germ(0, 2, s, rng);
    const CForm lam_mu = lambda(d_component(alpha, DComp::mu, s), s);
    const CForm mubar_star = adjoint_op(AdjOp::mubar, alpha, s);
    IdentityResidual r =
        make_residual("mu_identity_uncorrected_detects", s, lam_mu,
                      mubar_star * (-I), 0.0, 0.0, 2, 0, 0, 2);
    if (t == 0 || r.residual_rel > best.residual_rel)
      best = r;
  }
  best.pass = best.residual_rel >= 1e-3; // pass = the mutation is caught
  return best;
}

std::vector<IdentityResidual>
verify_lemmas(const AlmostHermitianStructure &s, SplitMix64 &rng,
              double tol_rel, double tol_abs) {
  const int n = s.n;
  const int two_n = s.two_n();
  auto rand_int = [&](int lo, int hi) {
    return lo + static_cast<int>(rng.next() %
                                 static_cast<std::uint64_t>(hi - lo + 1));
  };
  std::vector<IdentityResidual> out;

  { // ⋆⋆ = (−1)^k on degree k
    const int k = rand_int(0, two_n);
    const JetForm a = random_jetform(two_n, k, s.order, rng);
    out.push_back(make_residual_jet("star_involution", s,
                                    hodge_star(hodge_star(a, s), s),
                                    a * Cplx(neg1pow(k), 0.0), tol_rel,
                                    tol_abs, k));
  }
  { // ⋆Λ = L⋆
    const int k = rand_int(0, two_n);
    const JetForm a = random_jetform(two_n, k, s.order, rng);
    out.push_back(make_residual_jet("star_lambda_swap", s,
                                    hodge_star(lambda(a, s), s),
                                    lefschetz_L(hodge_star(a, s), s),
                                    tol_rel, tol_abs, k));
  }
  { // [L^j,Λ] = j(k−n+j−1)L^{j−1} on degree k, any form
    const int k = rand_int(0, two_n);
    const int jj = rand_int(1, n + 1);
    const JetForm a = random_jetform(two_n, k, s.order, rng);
    const JetForm lhs =
        L_pow(lambda(a, s), jj, s) - lambda(L_pow(a, jj, s), s);
    const JetForm rhs =
        L_pow(a, jj - 1, s) *
        Cplx(static_cast<double>(jj) * (k - n + jj - 1), 0.0);
    out.push_back(make_residual_jet("lefschetz_power_commutator", s, lhs,
                                    rhs, tol_rel, tol_abs, k, jj));
  }
  { // [d,L^m] = m[d,L]L^{m−1}
    const int k = rand_int(0, two_n);
    const int m = rand_int(1, n);
    const JetForm a = random_jetform(two_n, k, s.order, rng);
    const CForm lhs =
        exterior_d(L_pow(a, m, s)) - L_pow(exterior_d(a), m, s);
    const CForm rhs = commutator_dL(L_pow(a, m - 1, s), s) *
                      Cplx(static_cast<double>(m), 0.0);
    out.push_back(
        make_residual("dL_power_rule", s, lhs, rhs, tol_rel, tol_abs, k, m));
  }
  { // ⋆[d,L]a = (−1)^{k+1}[d*,Λ]⋆a
    const int k = rand_int(0, two_n);
    const JetForm a = random_jetform(two_n, k, s.order, rng);
    const JetForm sa = hodge_star(a, s);
    const CForm rhs = (adjoint_op(AdjOp::d, lambda(sa, s), s) -
                       lambda(adjoint_op(AdjOp::d, sa, s), s)) *
                      Cplx(neg1pow(k + 1), 0.0);
    out.push_back(make_residual("star_dL_adjoint", s,
                                hodge_star(commutator_dL(a, s), s), rhs,
                                tol_rel, tol_abs, k));
  }
  { // 𝕀⁻¹T𝕀 = (−i)^{r−s}T per bidegree component T of d
    const int p = rand_int(0, n);
    const int q = rand_int(0, n);
    const JetForm a = random_pure_germ(p, q, s, rng);
    const DComp comps[4] = {DComp::mubar, DComp::delbar, DComp::del,
                            DComp::mu};
    for (DComp which : comps) {
      int dr = 0, ds = 0;
      dcomp_bidegree(which, dr, ds);
      const CForm lhs =
          apply_I_inv(d_component(apply_I(a, s), which, s), s);
      // (−i)^{r−s} = i^{s−r}
      const int e = ((ds - dr) % 4 + 4) % 4;
      const Cplx ipw[4] = {Cplx(1, 0), Cplx(0, 1), Cplx(-1, 0),
                           Cplx(0, -1)};
      const CForm rhs = d_component(a, which, s) * ipw[e];
      out.push_back(make_residual(std::string("conj_") + dcomp_name(which),
                                  s, lhs, rhs, tol_rel, tol_abs, p + q, -1,
                                  p, q));
    }
    // 𝕀⁻¹d𝕀 = −i(μ̄ − ∂̄ + ∂ − μ)
    const CForm lhs = apply_I_inv(exterior_d(apply_I(a, s)), s);
    const CForm combo = d_component(a, DComp::mubar, s) -
                        d_component(a, DComp::delbar, s) +
                        d_component(a, DComp::del, s) -
                        d_component(a, DComp::mu, s);
    out.push_back(make_residual("conj_d_signs", s, lhs,
                                combo * Cplx(0.0, -1.0), tol_rel, tol_abs,
                                p + q, -1, p, q));
  }
  { // ⋆L^jα = (−1)^{k(k+1)/2}(j!/(n−k−j)!)L^{n−k−j}𝕀α, α primitive
    const int k = rand_int(0, n);
    const int jj = rand_int(0, n - k);
    const JetForm alpha = random_primitive_germ(k, s, rng);
    const JetForm lhs = hodge_star(L_pow(alpha, jj, s), s);
    const double c =
        neg1pow(k * (k + 1) / 2) * fact_ratio(jj, n - k - jj);
    const JetForm rhs =
        L_pow(apply_I(alpha, s), n - k - jj, s) * Cplx(c, 0.0);
    out.push_back(make_residual_jet("star_L_primitive", s, lhs, rhs,
                                    tol_rel, tol_abs, k, jj));
  }
  { // 𝕀𝕀 = (−1)^k on degree k
    const int k = rand_int(0, two_n);
    const JetForm a = random_jetform(two_n, k, s.order, rng);
    out.push_back(make_residual_jet("I_involution", s,
                                    apply_I(apply_I(a, s), s),
                                    a * Cplx(neg1pow(k), 0.0), tol_rel,
                                    tol_abs, k));
  }
  return out;
}

IdentityResidual witness_f_vanishing(const JetForm &alpha, int j,
                                     const AlmostHermitianStructure &s) {
  const TheoremTerms T = theorem_sides(alpha, j, s);
  const int n = s.n;
  CForm delta = zero_cform(s);
  if (j >= 1)
    delta += L_pow(T.dec.alpha(0), j - 1, s) *
             f_coeff(n, T.k, j, 0).to_double();
  delta += L_pow(T.dec.alpha(1), j, s) * f_coeff(n, T.k, j, 1).to_double();
  return make_residual("f_vanishing_witness", s, T.rhs + delta, T.rhs,
                       1e-12, 1e-12, T.k, j);
}

IdentityResidual
witness_adjoint_zeroth_order(const AlmostHermitianStructure &s,
                             SplitMix64 &rng) {
  const int two_n = s.two_n();
  const int k = 1 + static_cast<int>(
                        rng.next() %
                        static_cast<std::uint64_t>(two_n - 1));
  const JetForm a =
      as_constant_jets(random_cform(two_n, k, rng), two_n, s.order);
  Jet f = Jet::constant(rng.complex_normal(), two_n, s.order);
  for (int i = 0; i < two_n; ++i)
    f.grad()(i) = rng.complex_normal();
  JetForm fa(two_n, Jet::zero(two_n, s.order));
  for (int mask = 0; mask < (1 << two_n); ++mask)
    fa.coeff(mask) = f * a.coeff(mask);
  const CForm lhs = comm_lambda_adj(AdjOp::delbar, fa, s);
  const CForm rhs =
      comm_lambda_adj(AdjOp::delbar, a, s) * f.value();
  return make_residual("dL_adjoint_zeroth_order", s, lhs, rhs, 1e-11,
                       1e-11, k);
}

std::vector<IdentityResidual>
verify_oracle_suite(const AlmostHermitianStructure &s, SplitMix64 &rng) {
  std::vector<IdentityResidual> out;
  for (const OracleComparison &cmp : oracle_compare_all(s)) {
    IdentityResidual r;
    r.identity_id = "oracle_" + cmp.op;
    r.structure_descr = s.descr;
    r.lhs_norm = 1.0;
    r.rhs_norm = 1.0;
    r.residual_abs = cmp.max_err;
    r.residual_rel = cmp.max_err;
    r.pass = cmp.max_err < 1e-12;
    out.push_back(r);
  }
  const OracleTables tables = build_oracle(s);
  const int k = static_cast<int>(rng.next() %
                                 static_cast<std::uint64_t>(s.n + 1));
  const int j = static_cast<int>(
      rng.next() % static_cast<std::uint64_t>(s.n - k + 1));
  const JetForm alpha = random_primitive_germ(k, s, rng);
  const TheoremTerms T = theorem_sides(alpha, j, s);
  out.push_back(make_residual("oracle_main_identity_lhs", s, T.lhs,
                              oracle_theorem_lhs(tables, alpha, j), 1e-12,
                              1e-12, k, j));
  return out;
}

} // namespace ahc
