#include "ahc/calculus.hpp"

#include <algorithm>
#include <cmath>

namespace ahc {

CForm exterior_d(const JetForm &a) {
  const int two_n = a.two_n();
  CForm r(two_n, Cplx(0.0, 0.0));
  for (int mask = 0; mask < a.size(); ++mask) {
    const Jet &f = a.coeff(mask);
    if (ring_max_abs(f) == 0.0)
      continue;
    for (int i = 0; i < two_n; ++i) {
      if (mask & (1 << i))
        continue;
      const Cplx di = f.grad()(i);
      if (di == Cplx(0.0, 0.0))
        continue;
      const int sg = wedge_sign(1 << i, mask);
      r.coeff((1 << i) | mask) += di * Cplx(double(sg), 0.0);
    }
  }
  return r;
}

JetForm exterior_d_jet(const JetForm &a) {
  const int two_n = a.two_n();
  const Jet &z = a.zero_coeff();
  if (z.order() != 2)
    throw DimensionError("exterior_d_jet needs order-2 coefficients");
  JetForm r(two_n, Jet::zero(z.dim(), 1));
  for (int mask = 0; mask < a.size(); ++mask) {
    const Jet &f = a.coeff(mask);
    if (ring_max_abs(f) == 0.0)
      continue;
    for (int i = 0; i < two_n; ++i) {
      if (mask & (1 << i))
        continue;
      Jet di = Jet::zero(z.dim(), 1);
      di.value() = f.grad()(i);
      for (int j = 0; j < z.dim(); ++j)
        di.grad()(j) = f.hess()(i, j);
      const int sg = wedge_sign(1 << i, mask);
      r.coeff((1 << i) | mask) += di * Cplx(double(sg), 0.0);
    }
  }
  return r;
}

const char *dcomp_name(DComp c) {
  switch (c) {
  case DComp::mubar:
    return "mubar";
  case DComp::delbar:
    return "delbar";
  case DComp::del:
    return "del";
  default:
    return "mu";
  }
}

void dcomp_bidegree(DComp c, int &r, int &s) {
  switch (c) {
  case DComp::mubar:
    r = -1;
    s = 2;
    break;
  case DComp::delbar:
    r = 0;
    s = 1;
    break;
  case DComp::del:
    r = 1;
    s = 0;
    break;
  default:
    r = 2;
    s = -1;
    break;
  }
}

const char *adjop_name(AdjOp o) {
  switch (o) {
  case AdjOp::d:
    return "d*";
  case AdjOp::mubar:
    return "mubar*";
  case AdjOp::delbar:
    return "delbar*";
  case AdjOp::del:
    return "del*";
  default:
    return "mu*";
  }
}

namespace {

// Finds the pure bidegree of a nonzero form by projecting onto each (p,q)
// of its degree and accepting the projection that reproduces it.
void pure_bidegree(const JetForm &a, const AlmostHermitianStructure &s,
                   int &p_out, int &q_out) {
  const double amax = a.max_abs();
  const int k = a.homogeneous_degree(1e-12 * amax);
  if (k < 0)
    throw BidegreeError("zero form has no bidegree");
  const double tol = 1e-10 * std::max(1.0, amax);
  for (int p = 0; p <= k; ++p) {
    const JetForm proj = bigrade_project(a, p, k - p, s);
    if ((a - proj).max_abs() <= tol) {
      p_out = p;
      q_out = k - p;
      return;
    }
  }
  throw BidegreeError("form is not of pure bidegree");
}

} // namespace

CForm d_component(const JetForm &a, DComp which,
                  const AlmostHermitianStructure &s) {
  if (a.is_zero())
    return CForm(a.two_n(), Cplx(0.0, 0.0));
  int p = 0, q = 0;
  pure_bidegree(a, s, p, q);
  int dr = 0, ds = 0;
  dcomp_bidegree(which, dr, ds);
  return bigrade_project(exterior_d(a), p + dr, q + ds, s);
}

namespace {

DComp bar_swapped(AdjOp o) {
  switch (o) {
  case AdjOp::mubar:
    return DComp::mu;
  case AdjOp::delbar:
    return DComp::del;
  case AdjOp::del:
    return DComp::delbar;
  case AdjOp::mu:
    return DComp::mubar;
  default:
    throw InternalError("total differential has no conjugate component");
  }
}

CForm component_adjoint(const JetForm &pure, AdjOp which,
                        const AlmostHermitianStructure &s) {
  const JetForm inner = hodge_star(pure, s);
  const CForm mid = d_component(inner, bar_swapped(which), s);
  return -hodge_star(mid, s);
}

} // namespace

CForm adjoint_op(AdjOp which, const JetForm &a,
                 const AlmostHermitianStructure &s) {
  if (which == AdjOp::d) {
    const CForm mid = exterior_d(hodge_star(a, s));
    return -hodge_star(mid, s);
  }
  CForm acc(a.two_n(), Cplx(0.0, 0.0));
  const double amax = a.max_abs();
  if (amax == 0.0)
    return acc;
  const auto &bt = BasisTable::get(a.two_n());
  for (int k = 0; k <= a.two_n(); ++k) {
    bool nonzero = false;
    for (int m : bt.masks_of_degree(k))
      if (ring_max_abs(a.coeff(m)) != 0.0) {
        nonzero = true;
        break;
      }
    if (!nonzero)
      continue;
    const JetForm piece = a.degree_piece(k);
    for (int p = 0; p <= k; ++p) {
      const JetForm pq = bigrade_project(piece, p, k - p, s);
      if (pq.max_abs() <= 1e-14 * amax)
        continue;
      acc += component_adjoint(pq, which, s);
    }
  }
  return acc;
}

CForm commutator_dL(const JetForm &a, const AlmostHermitianStructure &s) {
  return wedge(s.d_omega, value_part(a));
}

CForm commutator_dL(const CForm &a, const AlmostHermitianStructure &s) {
  return wedge(s.d_omega, a);
}

CForm commutator_dL_direct(const JetForm &a,
                           const AlmostHermitianStructure &s) {
  return exterior_d(wedge(s.omega, a)) -
         wedge(value_part(s.omega), exterior_d(a));
}

namespace {

// [∂̄,L] x = ∂̄(ω∧x) − ω∧(∂̄x), a value form once ∂̄ is applied.
CForm dbar_L_comm(const JetForm &x, const AlmostHermitianStructure &s) {
  if (x.is_zero())
    return CForm(x.two_n(), Cplx(0.0, 0.0));
  return d_component(lefschetz_L(x, s), DComp::delbar, s) -
         lefschetz_L(d_component(x, DComp::delbar, s), s);
}

} // namespace

CForm torsion_taubar(const JetForm &a, const AlmostHermitianStructure &s) {
  CForm acc(a.two_n(), Cplx(0.0, 0.0));
  const double amax = a.max_abs();
  if (amax == 0.0)
    return acc;
  const auto &bt = BasisTable::get(a.two_n());
  for (int k = 0; k <= a.two_n(); ++k) {
    bool nonzero = false;
    for (int m : bt.masks_of_degree(k))
      if (ring_max_abs(a.coeff(m)) != 0.0) {
        nonzero = true;
        break;
      }
    if (!nonzero)
      continue;
    const JetForm piece = a.degree_piece(k);
    for (int p = 0; p <= k; ++p) {
      const JetForm pq = bigrade_project(piece, p, k - p, s);
      if (pq.max_abs() <= 1e-14 * amax)
        continue;
      acc += lambda(dbar_L_comm(pq, s), s) -
             dbar_L_comm(lambda(pq, s), s);
    }
  }
  return acc;
}

} // namespace ahc
