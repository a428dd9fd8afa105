#include "ahc/exterior.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace ahc {

namespace {

int neg1pow(int k) { return (k % 2 == 0) ? 1 : -1; }

// i^m for any integer m.
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

} // namespace

/// Per-structure operator tables, built once on first use.  Everything is
/// computed over the jet ring; the value-level views are the value slots of
/// the jet tables, so both coefficient kinds share one construction.
class ExteriorCache {
public:
  int two_n = 0;
  int order = 1;
  JetMatrix ginv;
  // Indexed by source degree k (empty where the operator is undefined).
  std::vector<JetMatrix> gram; // k -> k   pairing ⟨dx^R,dx^S⟩
  std::vector<JetMatrix> star; // k -> 2n−k
  std::vector<JetMatrix> L;    // k -> k+2
  std::vector<JetMatrix> lam;  // k -> k−2
  // Bidegree split of each basis form: fold[mask][p] is the (p, |mask|−p)
  // component of dx^mask.
  std::vector<std::vector<JetForm>> fold;
  // Value-level views.
  std::vector<Eigen::MatrixXcd> gram_v, star_v, L_v, lam_v;
  std::vector<std::vector<CForm>> fold_v;
};

namespace {

JetMatrix minor_det_matrix(const JetMatrix &ginv,
                           const std::vector<int> &masks, int k, int two_n,
                           int order) {
  const int m = static_cast<int>(masks.size());
  JetMatrix G(m, m, two_n, order);
  if (k == 0) {
    G.value()(0, 0) = Cplx(1.0, 0.0);
    return G;
  }
  std::vector<std::vector<int>> bits(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < two_n; ++b)
      if (masks[a] & (1 << b))
        bits[a].push_back(b);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      JetMatrix sub(k, k, two_n, order);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          sub.set_entry(i, j, ginv.entry(bits[r][i], bits[c][j]));
      G.set_entry(r, c, jet_det(sub));
    }
  return G;
}

std::shared_ptr<ExteriorCache> build_cache(const AlmostHermitianStructure &s) {
  auto C = std::make_shared<ExteriorCache>();
  const int two_n = s.two_n();
  const int order = s.order;
  const auto &bt = BasisTable::get(two_n);
  C->two_n = two_n;
  C->order = order;
  C->ginv = jet_inverse(s.g);

  C->gram.resize(two_n + 1);
  C->star.resize(two_n + 1);
  C->L.resize(two_n + 1);
  C->lam.resize(two_n + 1);

  for (int k = 0; k <= two_n; ++k)
    C->gram[k] =
        minor_det_matrix(C->ginv, bt.masks_of_degree(k), k, two_n, order);

  // ⋆ on degree k: solve the wedge-pairing system W·X = G·vol, where
  // W[R,T] is the coefficient of dx^R ∧ dx^T on the top form.
  for (int k = 0; k <= two_n; ++k) {
    const auto &masks = bt.masks_of_degree(k);
    const int m = static_cast<int>(masks.size());
    JetMatrix W(m, m, two_n, order);
    for (int r = 0; r < m; ++r) {
      const int comp = bt.complement(masks[r]);
      W.value()(r, bt.pos_in_degree(comp)) =
          Cplx(double(wedge_sign(masks[r], comp)), 0.0);
    }
    JetMatrix B(m, m, two_n, order);
    for (int r = 0; r < m; ++r)
      for (int q = 0; q < m; ++q)
        B.set_entry(r, q, jet_mul(C->gram[k].entry(r, q), s.vol_coeff));
    C->star[k] = jet_solve(W, B);
  }

  for (int k = 0; k + 2 <= two_n; ++k) {
    const auto &src = bt.masks_of_degree(k);
    const auto &two = bt.masks_of_degree(2);
    JetMatrix Lk(bt.degree_dim(k + 2), static_cast<int>(src.size()), two_n,
                 order);
    for (size_t c = 0; c < src.size(); ++c)
      for (int w : two) {
        const int sg = wedge_sign(w, src[c]);
        if (sg == 0)
          continue;
        Lk.set_entry(bt.pos_in_degree(w | src[c]), static_cast<int>(c),
                     s.omega.coeff(w) * Cplx(double(sg), 0.0));
      }
    C->L[k] = Lk;
  }

  for (int k = 2; k <= two_n; ++k)
    C->lam[k] = (C->star[two_n - k + 2] * (C->L[two_n - k] * C->star[k])) *
                Cplx(double(neg1pow(k)), 0.0);

  // (1,0)/(0,1) split of each covector: (π^s)_j = (δ_{sj} − i·J_{sj})/2.
  std::vector<JetForm> pi, pibar;
  const Jet jzero = Jet::zero(two_n, order);
  for (int sidx = 0; sidx < two_n; ++sidx) {
    JetForm p(two_n, jzero), pb(two_n, jzero);
    for (int j = 0; j < two_n; ++j) {
      const Jet Jsj = s.J.entry(sidx, j);
      Jet delta = Jet::zero(two_n, order);
      if (j == sidx)
        delta.value() = Cplx(1.0, 0.0);
      p.coeff(1 << j) = (delta - Jsj * Cplx(0.0, 1.0)) * Cplx(0.5, 0.0);
      pb.coeff(1 << j) = (delta + Jsj * Cplx(0.0, 1.0)) * Cplx(0.5, 0.0);
    }
    pi.push_back(p);
    pibar.push_back(pb);
  }

  C->fold.resize(bt.total());
  for (int mask = 0; mask < bt.total(); ++mask) {
    JetForm one(two_n, jzero);
    one.coeff(0) = Jet::constant(Cplx(1.0, 0.0), two_n, order);
    std::vector<JetForm> state = {one};
    for (int b = 0; b < two_n; ++b) {
      if (!(mask & (1 << b)))
        continue;
      std::vector<JetForm> next(state.size() + 1, JetForm(two_n, jzero));
      for (size_t p = 0; p < state.size(); ++p) {
        next[p] += wedge(state[p], pibar[b]);
        next[p + 1] += wedge(state[p], pi[b]);
      }
      state = std::move(next);
    }
    C->fold[mask] = std::move(state);
  }

  C->gram_v.resize(two_n + 1);
  C->star_v.resize(two_n + 1);
  C->L_v.resize(two_n + 1);
  C->lam_v.resize(two_n + 1);
  for (int k = 0; k <= two_n; ++k) {
    C->gram_v[k] = C->gram[k].value();
    C->star_v[k] = C->star[k].value();
    if (C->L[k].rows() > 0)
      C->L_v[k] = C->L[k].value();
    if (C->lam[k].rows() > 0)
      C->lam_v[k] = C->lam[k].value();
  }
  C->fold_v.resize(bt.total());
  for (int mask = 0; mask < bt.total(); ++mask)
    for (const auto &f : C->fold[mask])
      C->fold_v[mask].push_back(value_part(f));
  return C;
}

ExteriorCache &cache_for(const AlmostHermitianStructure &s) {
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lk(mu);
    if (s.cache)
      return *s.cache;
  }
  auto built = build_cache(s);
  std::lock_guard<std::mutex> lk(mu);
  if (!s.cache)
    s.cache = built;
  return *s.cache;
}

void check_form(const CForm &a, const AlmostHermitianStructure &s) {
  if (a.two_n() != s.two_n())
    throw DimensionError("form/structure dimension mismatch");
}

void check_form(const JetForm &a, const AlmostHermitianStructure &s) {
  if (a.two_n() != s.two_n())
    throw DimensionError("form/structure dimension mismatch");
  if (a.zero_coeff().dim() != s.two_n() ||
      a.zero_coeff().order() != s.order)
    throw DimensionError("jet coefficients do not match the structure germ");
}

bool piece_nonzero(const CForm &a, const std::vector<int> &masks) {
  for (int m : masks)
    if (ring_max_abs(a.coeff(m)) != 0.0)
      return true;
  return false;
}

bool piece_nonzero(const JetForm &a, const std::vector<int> &masks) {
  for (int m : masks)
    if (ring_max_abs(a.coeff(m)) != 0.0)
      return true;
  return false;
}

// Applies a per-degree matrix table (source degree k -> target degree t(k)).
CForm apply_table(const CForm &a, const std::vector<Eigen::MatrixXcd> &tab,
                  const std::vector<int> &target_degree) {
  const auto &bt = BasisTable::get(a.two_n());
  CForm r(a.two_n(), Cplx(0.0, 0.0));
  for (int k = 0; k <= a.two_n(); ++k) {
    if (tab[k].size() == 0 || !piece_nonzero(a, bt.masks_of_degree(k)))
      continue;
    const Eigen::VectorXcd out = tab[k] * degree_coeffs(a, k);
    const auto &tm = bt.masks_of_degree(target_degree[k]);
    for (size_t i = 0; i < tm.size(); ++i)
      r.coeff(tm[i]) += out(static_cast<int>(i));
  }
  return r;
}

JetForm apply_table(const JetForm &a, const std::vector<JetMatrix> &tab,
                    const std::vector<int> &target_degree) {
  const auto &bt = BasisTable::get(a.two_n());
  JetForm r(a.two_n(), a.zero_coeff());
  for (int k = 0; k <= a.two_n(); ++k) {
    if (tab[k].rows() == 0 || !piece_nonzero(a, bt.masks_of_degree(k)))
      continue;
    const JetMatrix out = tab[k] * degree_jet_coeffs(a, k);
    const auto &tm = bt.masks_of_degree(target_degree[k]);
    for (size_t i = 0; i < tm.size(); ++i)
      r.coeff(tm[i]) += out.entry(static_cast<int>(i), 0);
  }
  return r;
}

std::vector<int> star_targets(int two_n) {
  std::vector<int> t(two_n + 1);
  for (int k = 0; k <= two_n; ++k)
    t[k] = two_n - k;
  return t;
}

std::vector<int> shift_targets(int two_n, int shift) {
  std::vector<int> t(two_n + 1, 0);
  for (int k = 0; k <= two_n; ++k)
    if (k + shift >= 0 && k + shift <= two_n)
      t[k] = k + shift;
  return t;
}

} // namespace

Eigen::VectorXcd degree_coeffs(const CForm &a, int k) {
  const auto &masks = BasisTable::get(a.two_n()).masks_of_degree(k);
  Eigen::VectorXcd v(masks.size());
  for (size_t i = 0; i < masks.size(); ++i)
    v(static_cast<int>(i)) = a.coeff(masks[i]);
  return v;
}

CForm from_degree_coeffs(int two_n, int k, const Eigen::VectorXcd &c) {
  const auto &masks = BasisTable::get(two_n).masks_of_degree(k);
  if (static_cast<size_t>(c.size()) != masks.size())
    throw DimensionError("coefficient column has wrong length");
  CForm r(two_n, Cplx(0.0, 0.0));
  for (size_t i = 0; i < masks.size(); ++i)
    r.coeff(masks[i]) = c(static_cast<int>(i));
  return r;
}

JetMatrix degree_jet_coeffs(const JetForm &a, int k) {
  const auto &masks = BasisTable::get(a.two_n()).masks_of_degree(k);
  JetMatrix col(static_cast<int>(masks.size()), 1, a.zero_coeff().dim(),
                a.zero_coeff().order());
  for (size_t i = 0; i < masks.size(); ++i)
    col.set_entry(static_cast<int>(i), 0, a.coeff(masks[i]));
  return col;
}

JetForm from_degree_jet_coeffs(int two_n, int k, const JetMatrix &col,
                               const Jet &zero) {
  const auto &masks = BasisTable::get(two_n).masks_of_degree(k);
  if (col.rows() != static_cast<int>(masks.size()) || col.cols() != 1)
    throw DimensionError("coefficient column has wrong shape");
  JetForm r(two_n, zero);
  for (size_t i = 0; i < masks.size(); ++i)
    r.coeff(masks[i]) = col.entry(static_cast<int>(i), 0);
  return r;
}

CForm hodge_star(const CForm &a, const AlmostHermitianStructure &s) {
  check_form(a, s);
  auto &C = cache_for(s);
  return apply_table(a, C.star_v, star_targets(s.two_n()));
}

JetForm hodge_star(const JetForm &a, const AlmostHermitianStructure &s) {
  check_form(a, s);
  auto &C = cache_for(s);
  return apply_table(a, C.star, star_targets(s.two_n()));
}

namespace {

template <class T>
Form<T> star_inv_impl(const Form<T> &a, const AlmostHermitianStructure &s) {
  // ⋆⁻¹ = (−1)^k ⋆ degreewise.
  Form<T> r(a.two_n(), a.zero_coeff());
  for (int k = 0; k <= a.two_n(); ++k) {
    if (!piece_nonzero(a, BasisTable::get(a.two_n()).masks_of_degree(k)))
      continue;
    Form<T> piece = hodge_star(a.degree_piece(k), s);
    if (k % 2 != 0)
      piece *= Cplx(-1.0, 0.0);
    r += piece;
  }
  return r;
}

} // namespace

CForm hodge_star_inv(const CForm &a, const AlmostHermitianStructure &s) {
  return star_inv_impl(a, s);
}

JetForm hodge_star_inv(const JetForm &a, const AlmostHermitianStructure &s) {
  return star_inv_impl(a, s);
}

CForm lefschetz_L(const CForm &a, const AlmostHermitianStructure &s) {
  check_form(a, s);
  return wedge(value_part(s.omega), a);
}

JetForm lefschetz_L(const JetForm &a, const AlmostHermitianStructure &s) {
  check_form(a, s);
  return wedge(s.omega, a);
}

CForm lambda(const CForm &a, const AlmostHermitianStructure &s) {
  check_form(a, s);
  auto &C = cache_for(s);
  return apply_table(a, C.lam_v, shift_targets(s.two_n(), -2));
}

JetForm lambda(const JetForm &a, const AlmostHermitianStructure &s) {
  check_form(a, s);
  auto &C = cache_for(s);
  return apply_table(a, C.lam, shift_targets(s.two_n(), -2));
}

namespace {

template <class T, class FoldTable>
Form<T> bigrade_impl(const Form<T> &a, int p, int q, const FoldTable &fold) {
  Form<T> r(a.two_n(), a.zero_coeff());
  if (p < 0 || q < 0)
    return r;
  const int k = p + q;
  if (k > a.two_n())
    return r;
  for (int mask : BasisTable::get(a.two_n()).masks_of_degree(k)) {
    const T &c = a.coeff(mask);
    if (ring_max_abs(c) == 0.0)
      continue;
    r += fold[mask][p].scaled_by(c);
  }
  return r;
}

template <class T, class FoldTable>
Form<T> apply_I_impl(const Form<T> &a, const FoldTable &fold, bool inverse) {
  Form<T> r(a.two_n(), a.zero_coeff());
  for (int mask = 0; mask < a.size(); ++mask) {
    const T &c = a.coeff(mask);
    if (ring_max_abs(c) == 0.0)
      continue;
    const int k = mask_degree(mask);
    for (int p = 0; p <= k; ++p) {
      const Cplx f = inverse ? ipow(k - 2 * p) : ipow(2 * p - k);
      r += fold[mask][p].scaled_by(c) * f;
    }
  }
  return r;
}

} // namespace

CForm bigrade_project(const CForm &a, int p, int q,
                      const AlmostHermitianStructure &s) {
  check_form(a, s);
  return bigrade_impl(a, p, q, cache_for(s).fold_v);
}

JetForm bigrade_project(const JetForm &a, int p, int q,
                        const AlmostHermitianStructure &s) {
  check_form(a, s);
  return bigrade_impl(a, p, q, cache_for(s).fold);
}

CForm apply_I(const CForm &a, const AlmostHermitianStructure &s) {
  check_form(a, s);
  return apply_I_impl(a, cache_for(s).fold_v, false);
}

JetForm apply_I(const JetForm &a, const AlmostHermitianStructure &s) {
  check_form(a, s);
  return apply_I_impl(a, cache_for(s).fold, false);
}

CForm apply_I_inv(const CForm &a, const AlmostHermitianStructure &s) {
  check_form(a, s);
  return apply_I_impl(a, cache_for(s).fold_v, true);
}

JetForm apply_I_inv(const JetForm &a, const AlmostHermitianStructure &s) {
  check_form(a, s);
  return apply_I_impl(a, cache_for(s).fold, true);
}

namespace {

// Joint system {Σ_r L^r α_r = a, Λα_r = 0} over the jet ring, solved
// in least-squares form through the normal equations.
PrimitiveDecomposition<Jet>
decompose_jet(const JetForm &a, const AlmostHermitianStructure &s) {
  const int two_n = s.two_n();
  const int n = s.n;
  const auto &bt = BasisTable::get(two_n);
  auto &C = cache_for(s);
  const Jet jzero = a.zero_coeff();

  PrimitiveDecomposition<Jet> out;
  out.zero_form = JetForm(two_n, jzero);

  const double amax = a.max_abs();
  const int k = a.homogeneous_degree(1e-12 * amax);
  if (k < 0) {
    out.base_degree = 0;
    out.r_min = 0;
    return out;
  }
  out.base_degree = k;
  const int r_min = std::max(0, (k - n + 1) / 2);
  const int r_max = k / 2;
  out.r_min = r_min;
  // L^r annihilates every primitive (k−2r)-form when r < k−n, so those
  // slots are zero in the unique decomposition; keeping them in the solve
  // would make the normal equations singular.
  const int r_lo = std::max(r_min, k - n);

  std::vector<int> col_off, row_off, degs;
  int cols = 0;
  for (int r = r_lo; r <= r_max; ++r) {
    col_off.push_back(cols);
    degs.push_back(k - 2 * r);
    cols += bt.degree_dim(k - 2 * r);
  }
  int rows = bt.degree_dim(k);
  std::vector<int> lam_off;
  for (int r = r_lo; r <= r_max; ++r) {
    const int m = k - 2 * r;
    lam_off.push_back(rows);
    if (m >= 2)
      rows += bt.degree_dim(m - 2);
  }

  JetMatrix A(rows, cols, two_n, s.order);
  for (int ri = 0; ri <= r_max - r_lo; ++ri) {
    const int m = degs[ri];
    // chain L^{r}: degree m -> k
    JetMatrix chain = JetMatrix::identity(bt.degree_dim(m), two_n, s.order);
    for (int d = m; d + 2 <= k; d += 2)
      chain = C.L[d] * chain;
    for (int rr = 0; rr < chain.rows(); ++rr)
      for (int cc = 0; cc < chain.cols(); ++cc)
        A.set_entry(rr, col_off[ri] + cc, chain.entry(rr, cc));
    if (m >= 2) {
      const JetMatrix &lm = C.lam[m];
      for (int rr = 0; rr < lm.rows(); ++rr)
        for (int cc = 0; cc < lm.cols(); ++cc)
          A.set_entry(lam_off[ri] + rr, col_off[ri] + cc, lm.entry(rr, cc));
    }
  }

  JetMatrix b(rows, 1, two_n, s.order);
  {
    const JetMatrix top = degree_jet_coeffs(a, k);
    for (int rr = 0; rr < top.rows(); ++rr)
      b.set_entry(rr, 0, top.entry(rr, 0));
  }

  const JetMatrix AH = A.conjugate().transpose();
  const JetMatrix x = jet_solve(AH * A, AH * b);

  // Existence is guaranteed; a residual here means an operator bug.
  JetMatrix resid = A * x;
  resid += b * Cplx(-1.0, 0.0);
  double rmax_abs = 0.0;
  for (int rr = 0; rr < resid.rows(); ++rr)
    rmax_abs = std::max(rmax_abs, resid.entry(rr, 0).max_abs());
  if (rmax_abs > 1e-8 * std::max(1.0, amax))
    throw InternalError("Lefschetz decomposition system inconsistent");

  for (int r = 0; r <= r_max; ++r) {
    if (r < r_lo) {
      out.components.push_back(JetForm(two_n, jzero));
      continue;
    }
    const int ri = r - r_lo;
    const int m = degs[ri];
    JetMatrix seg(bt.degree_dim(m), 1, two_n, s.order);
    for (int rr = 0; rr < seg.rows(); ++rr)
      seg.set_entry(rr, 0, x.entry(col_off[ri] + rr, 0));
    out.components.push_back(from_degree_jet_coeffs(two_n, m, seg, jzero));
  }
  return out;
}

} // namespace

PrimitiveDecomposition<Jet>
lefschetz_decompose(const JetForm &a, const AlmostHermitianStructure &s) {
  check_form(a, s);
  return decompose_jet(a, s);
}

PrimitiveDecomposition<Cplx>
lefschetz_decompose(const CForm &a, const AlmostHermitianStructure &s) {
  if (a.two_n() != s.two_n())
    throw DimensionError("form/structure dimension mismatch");
  const PrimitiveDecomposition<Jet> jd =
      decompose_jet(as_constant_jets(a, s.two_n(), s.order), s);
  PrimitiveDecomposition<Cplx> out;
  out.base_degree = jd.base_degree;
  out.r_min = jd.r_min;
  out.zero_form = CForm(a.two_n(), Cplx(0.0, 0.0));
  for (const auto &c : jd.components)
    out.components.push_back(value_part(c));
  return out;
}

Cplx inner_product(const CForm &a, const CForm &b,
                   const AlmostHermitianStructure &s) {
  check_form(a, s);
  check_form(b, s);
  auto &C = cache_for(s);
  Cplx acc(0.0, 0.0);
  for (int k = 0; k <= s.two_n(); ++k) {
    const auto &masks = BasisTable::get(s.two_n()).masks_of_degree(k);
    if (!piece_nonzero(a, masks) || !piece_nonzero(b, masks))
      continue;
    const Eigen::VectorXcd av = degree_coeffs(a, k);
    const Eigen::VectorXcd bv = degree_coeffs(b, k);
    acc += (av.transpose() * C.gram_v[k] * bv.conjugate())(0, 0);
  }
  return acc;
}

double form_norm(const CForm &a, const AlmostHermitianStructure &s) {
  return std::sqrt(std::max(0.0, inner_product(a, a, s).real()));
}

double jet_form_norm(const JetForm &a, const AlmostHermitianStructure &s) {
  check_form(a, s);
  const int dim = a.zero_coeff().dim();
  const int order = a.zero_coeff().order();
  std::vector<CForm> slots;
  CForm v(a.two_n(), Cplx(0.0, 0.0));
  for (int m = 0; m < a.size(); ++m)
    v.coeff(m) = a.coeff(m).value();
  slots.push_back(v);
  for (int i = 0; i < dim; ++i) {
    CForm gi(a.two_n(), Cplx(0.0, 0.0));
    for (int m = 0; m < a.size(); ++m)
      gi.coeff(m) = a.coeff(m).grad()(i);
    slots.push_back(gi);
  }
  if (order == 2)
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        CForm h(a.two_n(), Cplx(0.0, 0.0));
        for (int m = 0; m < a.size(); ++m)
          h.coeff(m) = a.coeff(m).hess()(i, j);
        slots.push_back(h);
      }
  double sq = 0.0;
  for (const auto &f : slots) {
    const double nrm = form_norm(f, s);
    sq += nrm * nrm;
  }
  return std::sqrt(sq);
}

CForm random_cform(int two_n, int k, SplitMix64 &rng) {
  CForm r(two_n, Cplx(0.0, 0.0));
  for (int mask : BasisTable::get(two_n).masks_of_degree(k))
    r.coeff(mask) = rng.complex_normal();
  return r;
}

JetForm random_jetform(int two_n, int k, int order, SplitMix64 &rng) {
  JetForm r(two_n, Jet::zero(two_n, order));
  for (int mask : BasisTable::get(two_n).masks_of_degree(k)) {
    Jet c = Jet::zero(two_n, order);
    c.value() = rng.complex_normal();
    for (int i = 0; i < two_n; ++i)
      c.grad()(i) = rng.complex_normal();
    if (order == 2)
      for (int i = 0; i < two_n; ++i)
        for (int j = i; j < two_n; ++j) {
          const Cplx z = rng.complex_normal();
          c.hess()(i, j) = z;
          c.hess()(j, i) = z;
        }
    r.coeff(mask) = c;
  }
  return r;
}

} // namespace ahc
