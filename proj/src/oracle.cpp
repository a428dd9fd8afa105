#include "ahc/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "ahc/calculus.hpp"

namespace ahc {

namespace {

Cplx ipow(int m) {
  switch (((m % 4) + 4) % 4) {
  case 0:
    return Cplx(1.0, 0.0);
  case 1:
    return Cplx(0.0, 1.0);
  case 2:
    return Cplx(-1.0, 0.0);
  default:
    return Cplx(0.0, -1.0);
  }
}

OracleMat oracle_zero(int size, int dim) {
  OracleMat m;
  m.v = Eigen::MatrixXcd::Zero(size, size);
  m.g.assign(dim, Eigen::MatrixXcd::Zero(size, size));
  return m;
}

OracleMat oracle_identity(int size, int dim) {
  OracleMat m = oracle_zero(size, dim);
  m.v = Eigen::MatrixXcd::Identity(size, size);
  return m;
}

OracleMat oracle_scale(OracleMat m, Cplx s) {
  m.v *= s;
  for (auto &gi : m.g)
    gi *= s;
  return m;
}

OracleMat oracle_add(OracleMat a, const OracleMat &b) {
  a.v += b.v;
  for (size_t i = 0; i < a.g.size(); ++i)
    a.g[i] += b.g[i];
  return a;
}

OracleMat oracle_transpose(const OracleMat &m) {
  OracleMat t;
  t.v = m.v.transpose();
  for (const auto &gi : m.g)
    t.g.push_back(gi.transpose());
  return t;
}

// Adjugate by cofactor minors: adj(A)_{ij} = (−1)^{i+j} det(A with row j,
// column i removed).  Valid for singular A, unlike det(A)·A⁻¹.
Eigen::MatrixXcd adjugate(const Eigen::MatrixXcd &A) {
  const int k = static_cast<int>(A.rows());
  if (k == 0)
    return Eigen::MatrixXcd(0, 0);
  if (k == 1) {
    Eigen::MatrixXcd one(1, 1);
    one(0, 0) = Cplx(1.0, 0.0);
    return one;
  }
  Eigen::MatrixXcd adj(k, k);
  Eigen::MatrixXcd minor(k - 1, k - 1);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      for (int r = 0, mr = 0; r < k; ++r) {
        if (r == j)
          continue;
        for (int c = 0, mc = 0; c < k; ++c) {
          if (c == i)
            continue;
          minor(mr, mc++) = A(r, c);
        }
        ++mr;
      }
      const double sgn = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      adj(i, j) = sgn * minor.determinant();
    }
  return adj;
}

// det over the jet ring by Jacobi's formula: value det(A₀), gradient slot
// tr(adj(A₀)·A_i).  Independent of the row-replacement expansion.
Jet jacobi_det(const Eigen::MatrixXcd &A0,
               const std::vector<Eigen::MatrixXcd> &Ai, int dim) {
  Jet d = Jet::zero(dim, 1);
  if (A0.rows() == 0) {
    d.value() = Cplx(1.0, 0.0);
    return d;
  }
  d.value() = A0.determinant();
  const Eigen::MatrixXcd adj = adjugate(A0);
  for (int i = 0; i < dim; ++i)
    d.grad()(i) = (adj * Ai[i]).trace();
  return d;
}

} // namespace

OracleJetVec to_oracle_vec(const JetForm &a) {
  const int N = a.size();
  const int dim = a.zero_coeff().dim();
  OracleJetVec x;
  x.v = Eigen::VectorXcd::Zero(N);
  x.g.assign(dim, Eigen::VectorXcd::Zero(N));
  for (int m = 0; m < N; ++m) {
    x.v(m) = a.coeff(m).value();
    for (int i = 0; i < dim; ++i)
      x.g[i](m) = a.coeff(m).grad()(i);
  }
  return x;
}

JetForm from_oracle_vec(const OracleJetVec &x, int two_n) {
  JetForm a(two_n, Jet::zero(two_n, 1));
  for (int m = 0; m < a.size(); ++m) {
    Jet c = Jet::zero(two_n, 1);
    c.value() = x.v(m);
    for (int i = 0; i < two_n; ++i)
      c.grad()(i) = x.g[i](m);
    a.coeff(m) = c;
  }
  return a;
}

Eigen::VectorXcd to_value_vec(const CForm &a) {
  Eigen::VectorXcd v(a.size());
  for (int m = 0; m < a.size(); ++m)
    v(m) = a.coeff(m);
  return v;
}

CForm from_value_vec(const Eigen::VectorXcd &v, int two_n) {
  CForm a(two_n, Cplx(0.0, 0.0));
  for (int m = 0; m < a.size(); ++m)
    a.coeff(m) = v(m);
  return a;
}

OracleMat oracle_mul(const OracleMat &A, const OracleMat &B) {
  OracleMat r;
  r.v = A.v * B.v;
  for (size_t i = 0; i < A.g.size(); ++i)
    r.g.push_back(A.v * B.g[i] + A.g[i] * B.v);
  return r;
}

OracleJetVec oracle_apply(const OracleMat &M, const OracleJetVec &x) {
  OracleJetVec r;
  r.v = M.v * x.v;
  for (size_t i = 0; i < M.g.size(); ++i)
    r.g.push_back(M.v * x.g[i] + M.g[i] * x.v);
  return r;
}

Eigen::VectorXcd oracle_apply_value(const OracleMat &M,
                                    const Eigen::VectorXcd &x) {
  return M.v * x;
}

OracleTables build_oracle(const AlmostHermitianStructure &s) {
  const int n = s.n;
  const int two_n = s.two_n();
  const auto &bt = BasisTable::get(two_n);
  const int N = bt.total();

  OracleTables T;
  T.n = n;
  T.two_n = two_n;

  // g and g⁻¹ slots (closed-form inverse derivative).
  const Eigen::MatrixXcd g0 = s.g.value();
  std::vector<Eigen::MatrixXcd> gi;
  for (int i = 0; i < two_n; ++i)
    gi.push_back(s.g.grad(i));
  const Eigen::MatrixXcd ginv0 = g0.inverse();
  std::vector<Eigen::MatrixXcd> ginvi;
  for (int i = 0; i < two_n; ++i)
    ginvi.push_back(-ginv0 * gi[i] * ginv0);

  // Blockwise Gram: ⟨dx^R, dx^S⟩ = det[g^{r_a s_b}].
  T.gram = oracle_zero(N, two_n);
  for (int R = 0; R < N; ++R)
    for (int S = 0; S < N; ++S) {
      const int k = mask_degree(R);
      if (mask_degree(S) != k)
        continue;
      std::vector<int> rb, sb;
      for (int b = 0; b < two_n; ++b) {
        if (R & (1 << b))
          rb.push_back(b);
        if (S & (1 << b))
          sb.push_back(b);
      }
      Eigen::MatrixXcd m0(k, k);
      std::vector<Eigen::MatrixXcd> mi(two_n, Eigen::MatrixXcd(k, k));
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
          m0(a, b) = ginv0(rb[a], sb[b]);
          for (int i = 0; i < two_n; ++i)
            mi[i](a, b) = ginvi[i](rb[a], sb[b]);
        }
      const Jet det = jacobi_det(m0, mi, two_n);
      T.gram.v(R, S) = det.value();
      for (int i = 0; i < two_n; ++i)
        T.gram.g[i](R, S) = det.grad()(i);
    }

  // vol = sqrt(det g); orientation is positive by construction.
  {
    const Jet detg = jacobi_det(g0, gi, two_n);
    T.vol = Jet::zero(two_n, 1);
    const double dv = detg.value().real();
    T.vol.value() = Cplx(std::sqrt(dv), 0.0);
    for (int i = 0; i < two_n; ++i)
      T.vol.grad()(i) = detg.grad()(i) / (2.0 * std::sqrt(dv));
  }

  // ⋆ from the wedge-pairing system on the whole basis: W·X = gram·vol,
  // with W[R,T] the coefficient of dx^R ∧ dx^T on the top form.
  {
    Eigen::MatrixXcd W = Eigen::MatrixXcd::Zero(N, N);
    for (int R = 0; R < N; ++R) {
      const int comp = bt.complement(R);
      W(R, comp) = Cplx(double(wedge_sign(R, comp)), 0.0);
    }
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(W);
    OracleMat B = oracle_zero(N, two_n);
    B.v = T.gram.v * T.vol.value();
    for (int i = 0; i < two_n; ++i)
      B.g[i] = T.gram.v * T.vol.grad()(i) + T.gram.g[i] * T.vol.value();
    T.star.v = lu.solve(B.v);
    for (int i = 0; i < two_n; ++i)
      T.star.g.push_back(lu.solve(B.g[i]));
  }

  // L = ω ∧ ·, assembled across the whole basis.
  T.L = oracle_zero(N, two_n);
  for (int w = 0; w < N; ++w) {
    if (mask_degree(w) != 2)
      continue;
    const Jet &c = s.omega.coeff(w);
    for (int S = 0; S < N; ++S) {
      if (w & S)
        continue;
      const double sg = double(wedge_sign(w, S));
      T.L.v(w | S, S) += sg * c.value();
      for (int i = 0; i < two_n; ++i)
        T.L.g[i](w | S, S) += sg * c.grad()(i);
    }
  }

  // Λ as the Gram adjoint of L (everything real, so no conjugation).
  {
    OracleMat graminv;
    graminv.v = T.gram.v.inverse();
    for (int i = 0; i < two_n; ++i)
      graminv.g.push_back(-graminv.v * T.gram.g[i] * graminv.v);
    T.lam = oracle_mul(graminv, oracle_mul(oracle_transpose(T.L), T.gram));
  }

  // D extends α ↦ α∘J as a derivation; eigenvalue i(p−q) on (p,q).
  T.D = oracle_zero(N, two_n);
  for (int S = 0; S < N; ++S)
    for (int sbit = 0; sbit < two_n; ++sbit) {
      if (!(S & (1 << sbit)))
        continue;
      const int rank_s = mask_degree(S & ((1 << sbit) - 1));
      const int rest = S & ~(1 << sbit);
      for (int j = 0; j < two_n; ++j) {
        if (rest & (1 << j))
          continue;
        const int sign_move =
            ((rank_s % 2 == 0) ? 1 : -1) * wedge_sign(1 << j, rest);
        const int Sp = rest | (1 << j);
        T.D.v(Sp, S) += double(sign_move) * s.J.value()(sbit, j);
        for (int i = 0; i < two_n; ++i)
          T.D.g[i](Sp, S) += double(sign_move) * s.J.grad(i)(sbit, j);
      }
    }

  // Lagrange projectors onto the eigenvalue ic, c ∈ {−n,…,n}.
  T.proj.clear();
  for (int c = -n; c <= n; ++c) {
    OracleMat acc = oracle_identity(N, two_n);
    for (int cp = -n; cp <= n; ++cp) {
      if (cp == c)
        continue;
      OracleMat factor = T.D;
      factor.v -= Cplx(0.0, double(cp)) * Eigen::MatrixXcd::Identity(N, N);
      factor = oracle_scale(factor, Cplx(1.0, 0.0) /
                                        Cplx(0.0, double(c - cp)));
      acc = oracle_mul(acc, factor);
    }
    T.proj.push_back(acc);
  }

  T.I = oracle_zero(N, two_n);
  T.I_inv = oracle_zero(N, two_n);
  for (int c = -n; c <= n; ++c) {
    T.I = oracle_add(T.I, oracle_scale(T.proj[c + n], ipow(c)));
    T.I_inv = oracle_add(T.I_inv, oracle_scale(T.proj[c + n], ipow(-c)));
  }

  // d as a matrix from jet slots (value block zero) to point values.
  T.d_pt = Eigen::MatrixXcd::Zero(N, (1 + two_n) * N);
  for (int S = 0; S < N; ++S)
    for (int i = 0; i < two_n; ++i) {
      if (S & (1 << i))
        continue;
      T.d_pt(S | (1 << i), (1 + i) * N + S) +=
          double(wedge_sign(1 << i, S));
    }

  return T;
}

CForm oracle_d_value(const OracleTables &T, const JetForm &a) {
  const int N = 1 << T.two_n;
  const OracleJetVec x = to_oracle_vec(a);
  Eigen::VectorXcd slots = Eigen::VectorXcd::Zero((1 + T.two_n) * N);
  slots.segment(0, N) = x.v;
  for (int i = 0; i < T.two_n; ++i)
    slots.segment((1 + i) * N, N) = x.g[i];
  return from_value_vec(T.d_pt * slots, T.two_n);
}

namespace {

Eigen::VectorXcd oracle_d_value_vec(const OracleTables &T,
                                    const OracleJetVec &x) {
  const int N = 1 << T.two_n;
  Eigen::VectorXcd slots = Eigen::VectorXcd::Zero((1 + T.two_n) * N);
  slots.segment(0, N) = x.v;
  for (int i = 0; i < T.two_n; ++i)
    slots.segment((1 + i) * N, N) = x.g[i];
  return T.d_pt * slots;
}

} // namespace

PrimitiveDecomposition<Cplx> oracle_lefschetz(const OracleTables &T,
                                              const CForm &a) {
  const int two_n = T.two_n;
  const auto &bt = BasisTable::get(two_n);

  PrimitiveDecomposition<Cplx> out;
  out.zero_form = CForm(two_n, Cplx(0.0, 0.0));
  const double amax = a.max_abs();
  const int k = a.homogeneous_degree(1e-12 * amax);
  if (k < 0) {
    out.base_degree = 0;
    out.r_min = 0;
    return out;
  }
  out.base_degree = k;
  // Primitive m-forms exist for m ≤ n only, so k−2r ≤ n; additionally
  // L^r kills primitive (k−2r)-forms when r < k−n, so those slots stay
  // zero and only r ≥ k−n enters the solve.
  const int r_min = std::max(0, (k - T.n + 1) / 2);
  const int r_max = k / 2;
  out.r_min = r_min;
  const int r_lo = std::max(r_min, k - T.n);

  // Primitive bases: kernel of Λ on each involved degree.
  std::vector<Eigen::MatrixXcd> bases;
  std::vector<int> degs;
  int total_cols = 0;
  for (int r = r_lo; r <= r_max; ++r) {
    const int m = k - 2 * r;
    degs.push_back(m);
    const auto &mm = bt.masks_of_degree(m);
    Eigen::MatrixXcd basis;
    if (m < 2) {
      basis = Eigen::MatrixXcd::Identity(mm.size(), mm.size());
    } else {
      const auto &tm = bt.masks_of_degree(m - 2);
      Eigen::MatrixXcd block(tm.size(), mm.size());
      for (size_t rr = 0; rr < tm.size(); ++rr)
        for (size_t cc = 0; cc < mm.size(); ++cc)
          block(rr, cc) = T.lam.v(tm[rr], mm[cc]);
      basis = Eigen::FullPivLU<Eigen::MatrixXcd>(block).kernel();
    }
    bases.push_back(basis);
    total_cols += static_cast<int>(basis.cols());
  }

  // Columns L^r·(primitive basis) restricted to degree k, one least-squares
  // solve for all components.
  const auto &km = bt.masks_of_degree(k);
  Eigen::MatrixXcd A(km.size(), total_cols);
  int col = 0;
  const int N = bt.total();
  for (size_t ri = 0; ri < bases.size(); ++ri) {
    const auto &mm = bt.masks_of_degree(degs[ri]);
    for (int b = 0; b < bases[ri].cols(); ++b) {
      Eigen::VectorXcd full = Eigen::VectorXcd::Zero(N);
      for (size_t mmi = 0; mmi < mm.size(); ++mmi)
        full(mm[mmi]) = bases[ri](mmi, b);
      for (int rr = 0; rr < r_lo + static_cast<int>(ri); ++rr)
        full = T.L.v * full;
      for (size_t kk = 0; kk < km.size(); ++kk)
        A(kk, col) = full(km[kk]);
      ++col;
    }
  }

  Eigen::VectorXcd b(km.size());
  for (size_t kk = 0; kk < km.size(); ++kk)
    b(kk) = a.coeff(km[kk]);
  const Eigen::VectorXcd x =
      A.completeOrthogonalDecomposition().solve(b);
  if ((A * x - b).cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, amax))
    throw InternalError("oracle Lefschetz system inconsistent");

  col = 0;
  for (int r = 0; r <= r_max; ++r) {
    if (r < r_lo) {
      out.components.push_back(CForm(two_n, Cplx(0.0, 0.0)));
      continue;
    }
    const size_t ri = static_cast<size_t>(r - r_lo);
    const auto &mm = bt.masks_of_degree(degs[ri]);
    const int nc = static_cast<int>(bases[ri].cols());
    const Eigen::VectorXcd comp = bases[ri] * x.segment(col, nc);
    col += nc;
    CForm f(two_n, Cplx(0.0, 0.0));
    for (size_t mmi = 0; mmi < mm.size(); ++mmi)
      f.coeff(mm[mmi]) = comp(mmi);
    out.components.push_back(f);
  }
  return out;
}

CForm oracle_theorem_lhs(const OracleTables &T, const JetForm &alpha,
                         int j) {
  OracleJetVec eta = to_oracle_vec(alpha);
  for (int i = 0; i < j; ++i)
    eta = oracle_apply(T.L, eta);

  // [Λ,d]η = Λ(dη) − d(Λη).
  const Eigen::VectorXcd comm =
      T.lam.v * oracle_d_value_vec(T, eta) -
      oracle_d_value_vec(T, oracle_apply(T.lam, eta));

  // ⋆𝕀⁻¹d𝕀⋆η, inner operators at jet level, outer at the point.
  const OracleJetVec inner = oracle_apply(T.I, oracle_apply(T.star, eta));
  const Eigen::VectorXcd outer =
      T.star.v * (T.I_inv.v * oracle_d_value_vec(T, inner));

  return from_value_vec(comm - outer, T.two_n);
}

namespace {

double jet_form_dist(const JetForm &a, const JetForm &b) {
  return (a - b).max_abs();
}

JetForm basis_jet(int two_n, int mask) {
  JetForm f(two_n, Jet::zero(two_n, 1));
  f.coeff(mask) = Jet::constant(Cplx(1.0, 0.0), two_n, 1);
  return f;
}

} // namespace

std::vector<OracleComparison>
oracle_compare_all(const AlmostHermitianStructure &s) {
  const int two_n = s.two_n();
  const int n = s.n;
  const int N = 1 << two_n;
  const OracleTables T = build_oracle(s);

  OracleComparison star{"star", 0.0}, L{"L", 0.0}, lam{"lambda", 0.0},
      I{"I", 0.0}, Ii{"I_inv", 0.0}, big{"bigrade", 0.0}, d{"d", 0.0},
      gram{"gram", 0.0}, vol{"vol", 0.0};

  for (int mask = 0; mask < N; ++mask) {
    const JetForm e = basis_jet(two_n, mask);
    const OracleJetVec ev = to_oracle_vec(e);
    const int k = mask_degree(mask);

    star.max_err = std::max(
        star.max_err,
        jet_form_dist(hodge_star(e, s),
                      from_oracle_vec(oracle_apply(T.star, ev), two_n)));
    L.max_err = std::max(
        L.max_err,
        jet_form_dist(lefschetz_L(e, s),
                      from_oracle_vec(oracle_apply(T.L, ev), two_n)));
    lam.max_err = std::max(
        lam.max_err,
        jet_form_dist(lambda(e, s),
                      from_oracle_vec(oracle_apply(T.lam, ev), two_n)));
    I.max_err = std::max(
        I.max_err,
        jet_form_dist(apply_I(e, s),
                      from_oracle_vec(oracle_apply(T.I, ev), two_n)));
    Ii.max_err = std::max(
        Ii.max_err,
        jet_form_dist(apply_I_inv(e, s),
                      from_oracle_vec(oracle_apply(T.I_inv, ev), two_n)));

    for (int p = 0; p <= k; ++p) {
      const int c = 2 * p - k;
      const JetForm structured = bigrade_project(e, p, k - p, s);
      if (c < -n || c > n) {
        big.max_err = std::max(big.max_err, structured.max_abs());
        continue;
      }
      big.max_err = std::max(
          big.max_err,
          jet_form_dist(structured, from_oracle_vec(
                                        oracle_apply(T.proj[c + n], ev),
                                        two_n)));
    }

    // d probed on coordinate-coefficient germs x^i·dx^mask.
    for (int i = 0; i < two_n; ++i) {
      JetForm ci(two_n, Jet::zero(two_n, 1));
      ci.coeff(mask) = Jet::coordinate(i, Cplx(0.0, 0.0), two_n, 1);
      d.max_err = std::max(
          d.max_err,
          (exterior_d(ci) - oracle_d_value(T, ci)).max_abs());
    }
  }

  // Gram entries against structured inner products of basis elements.
  for (int R = 0; R < N; ++R)
    for (int S = 0; S < N; ++S) {
      if (mask_degree(R) != mask_degree(S))
        continue;
      const CForm eR = value_part(basis_jet(two_n, R));
      const CForm eS = value_part(basis_jet(two_n, S));
      gram.max_err =
          std::max(gram.max_err,
                   std::abs(inner_product(eR, eS, s) - T.gram.v(R, S)));
    }

  vol.max_err = (s.vol_coeff - T.vol).max_abs();

  return {star, L, lam, I, Ii, big, d, gram, vol};
}

} // namespace ahc
